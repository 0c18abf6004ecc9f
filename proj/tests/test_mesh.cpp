/*
Copyright 2026 The LTL Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ltl;

namespace
{

Mesh unit_right_triangle()
{
    return Mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
}

/** Cyclic rotation that starts the sequence at its smallest element */
std::vector<Index> canonical_cycle(std::vector<Index> c)
{
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    return c;
}

}  // namespace

TEST(Mesh, RejectsDanglingIndex)
{
    EXPECT_THROW(Mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 3}}), MeshError);
    EXPECT_THROW(Mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, -1, 2}}), MeshError);
}

TEST(Mesh, RejectsRepeatedVertexInFace)
{
    EXPECT_THROW(Mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 1}}), MeshError);
}

TEST(Mesh, RejectsDuplicateFace)
{
    EXPECT_THROW(Mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}, {1, 2, 0}}), MeshError);
}

TEST(Mesh, RejectsNonManifoldEdge)
{
    // three triangles on edge (0, 1)
    std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}};
    EXPECT_THROW(Mesh(pts, {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}), MeshError);
}

TEST(Mesh, OctahedronHasValenceFour)
{
    const auto m = test::octahedron();
    EXPECT_EQ(m.num_vertices(), 6);
    EXPECT_EQ(m.num_faces(), 8);
    for (Index v = 0; v < 6; ++v) {
        EXPECT_EQ(m.adjacent_vertices(v).size(), 4u);
        EXPECT_FALSE(m.is_boundary_vertex(v));
    }
    EXPECT_EQ(euler_characteristic(m), 2);
}

TEST(OneRing, OctahedronVertex)
{
    const auto m = test::octahedron();
    const auto ring = one_ring(m, 4);
    EXPECT_EQ(ring.center, 4);
    EXPECT_FALSE(ring.is_boundary);
    ASSERT_EQ(ring.neighbors.size(), 4u);
    EXPECT_EQ(ring.incident_faces.size(), 4u);
    // counterclockwise seen from +z: 0 -> 2 -> 1 -> 3
    EXPECT_EQ(canonical_cycle(ring.neighbors), (std::vector<Index>{0, 2, 1, 3}));
}

TEST(OneRing, SingleTriangle)
{
    const auto m = unit_right_triangle();
    for (Index v = 0; v < 3; ++v) {
        const auto ring = one_ring(m, v);
        EXPECT_TRUE(ring.is_boundary);
        EXPECT_EQ(ring.neighbors.size(), 2u);
    }
}

TEST(OneRing, GridCorner)
{
    const auto m = generate_planar(DomainKind::ThreeDirectional, 3, 0);
    for (Index v = 0; v < m.num_vertices(); ++v) {
        const auto& p = m.vertex(v);
        const bool corner = (p.x() == 0.0 || p.x() == 1.0) && (p.y() == 0.0 || p.y() == 1.0);
        if (corner) {
            const auto ring = one_ring(m, v);
            EXPECT_TRUE(ring.is_boundary);
            EXPECT_GE(ring.neighbors.size(), 2u);
            EXPECT_LE(ring.neighbors.size(), 3u);
        }
    }
}

TEST(OneRing, IndependentOfFaceOrder)
{
    const auto m = generate_planar(DomainKind::Unstructured, 5, 3);
    auto faces = m.faces();
    std::mt19937_64 rng(11);
    std::shuffle(faces.begin(), faces.end(), rng);
    for (auto& f : faces) {
        std::rotate(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(rng() % 3), f.end());
    }
    const Mesh shuffled(m.vertices(), faces);
    for (Index v = 0; v < m.num_vertices(); ++v) {
        const auto a = one_ring(m, v);
        const auto b = one_ring(shuffled, v);
        EXPECT_EQ(a.is_boundary, b.is_boundary);
        if (a.is_boundary) {
            EXPECT_EQ(a.neighbors, b.neighbors) << "vertex " << v;
        } else {
            EXPECT_EQ(canonical_cycle(a.neighbors), canonical_cycle(b.neighbors)) << "vertex " << v;
        }
    }
}

TEST(OneRing, InvalidVertexThrows)
{
    const auto m = unit_right_triangle();
    EXPECT_THROW(one_ring(m, 3), MeshError);
}

TEST(KRing, OctahedronDepthTwoReachesAntipode)
{
    const auto m = test::octahedron();
    EXPECT_EQ(k_ring(m, 4, 1).size(), 4u);
    const auto r2 = k_ring(m, 4, 2);
    ASSERT_EQ(r2.size(), 5u);
    EXPECT_TRUE(std::find(r2.begin(), r2.end(), Index{5}) != r2.end());
}

TEST(MeshStats, UnitRightTriangle)
{
    const auto s = mesh_stats(unit_right_triangle());
    EXPECT_DOUBLE_EQ(s.mesh_size_r, std::sqrt(2.0));
    EXPECT_EQ(s.n_vertices, 3);
    EXPECT_EQ(s.n_faces, 1);
    EXPECT_EQ(s.n_boundary_vertices, 3);
}

TEST(MeshStats, Octahedron)
{
    EXPECT_DOUBLE_EQ(mesh_stats(test::octahedron()).mesh_size_r, std::sqrt(2.0));
}

TEST(MeshStats, FourDirectionalTwoByTwo)
{
    // cell side 1/2 is the longest edge; center spokes are sqrt(2)/4
    const auto s = mesh_stats(generate_planar(DomainKind::FourDirectional, 2, 0));
    EXPECT_DOUBLE_EQ(s.mesh_size_r, 0.5);
    EXPECT_EQ(s.n_vertices, 9 + 4);
    EXPECT_EQ(s.n_faces, 16);
}

TEST(MeshStats, EmptyMeshThrows)
{
    EXPECT_THROW(mesh_stats(Mesh{}), MeshError);
}
