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

#include <map>
#include <set>

using namespace ltl;

namespace
{
constexpr std::array kKinds{DomainKind::ThreeDirectional, DomainKind::FourDirectional, DomainKind::Unstructured};

double signed_area(const Mesh& m, const Face& f)
{
    const Vec3 a = m.vertex(f[0]), b = m.vertex(f[1]), c = m.vertex(f[2]);
    return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}
}  // namespace

TEST(GeneratePlanar, SingleCellCounts)
{
    const auto a = generate_planar(DomainKind::ThreeDirectional, 1, 0);
    EXPECT_EQ(a.num_vertices(), 4);
    EXPECT_EQ(a.num_faces(), 2);
    const auto b = generate_planar(DomainKind::FourDirectional, 1, 0);
    EXPECT_EQ(b.num_vertices(), 5);
    EXPECT_EQ(b.num_faces(), 4);
}

TEST(GeneratePlanar, FourDirectionalFourByFour)
{
    const auto m = generate_planar(DomainKind::FourDirectional, 4, 0);
    EXPECT_EQ(m.num_vertices(), 25 + 16);
    EXPECT_EQ(m.num_faces(), 64);
    // axis edges of length 1/4 dominate the half-diagonal spokes sqrt(2)/8
    EXPECT_DOUBLE_EQ(mesh_stats(m).mesh_size_r, 0.25);
}

TEST(GeneratePlanar, BaseResolutionEdgeLengths)
{
    EXPECT_NEAR(mesh_stats(generate_planar(DomainKind::ThreeDirectional, 5, 0)).mesh_size_r, std::sqrt(0.08), 1e-15);
    EXPECT_NEAR(mesh_stats(generate_planar(DomainKind::FourDirectional, 10, 0)).mesh_size_r, 0.1, 1e-15);
}

TEST(GeneratePlanar, UnstructuredIsBitIdenticalForOneSeed)
{
    const auto a = generate_planar(DomainKind::Unstructured, 5, 42);
    const auto b = generate_planar(DomainKind::Unstructured, 5, 42);
    EXPECT_EQ(a.vertices(), b.vertices());
    EXPECT_EQ(a.faces(), b.faces());
    const auto c = generate_planar(DomainKind::Unstructured, 5, 43);
    EXPECT_NE(a.vertices(), c.vertices());
}

TEST(GeneratePlanar, DiskTopologyAndOrientation)
{
    for (auto kind : kKinds) {
        for (int n : {1, 2, 5, 9}) {
            const auto m = generate_planar(kind, n, 7);
            EXPECT_EQ(euler_characteristic(m), 1) << to_string(kind) << " n=" << n;
            double area = 0.0;
            for (const auto& f : m.faces()) {
                const double a = signed_area(m, f);
                EXPECT_GT(a, 0.0);
                area += a;
            }
            EXPECT_NEAR(area, 1.0, 1e-12);
            for (const auto& p : m.vertices()) {
                EXPECT_EQ(p.z(), 0.0);
                EXPECT_GE(p.x(), 0.0);
                EXPECT_LE(p.x(), 1.0);
                EXPECT_GE(p.y(), 0.0);
                EXPECT_LE(p.y(), 1.0);
            }
        }
    }
}

TEST(GeneratePlanar, UnstructuredIsDelaunay)
{
    const auto m = generate_planar(DomainKind::Unstructured, 8, 1);
    std::map<std::pair<Index, Index>, Index> opposite;
    for (const auto& f : m.faces()) {
        for (int k = 0; k < 3; ++k) {
            opposite[{f[k], f[(k + 1) % 3]}] = f[(k + 2) % 3];
        }
    }
    for (const auto& [edge, c] : opposite) {
        auto it = opposite.find({edge.second, edge.first});
        if (it == opposite.end()) {
            continue;
        }
        const Vec3 &a = m.vertex(edge.first), &b = m.vertex(edge.second), &pc = m.vertex(c);
        const Vec3& d = m.vertex(it->second);
        const double scale = (a - pc).squaredNorm() * (b - pc).squaredNorm();
        EXPECT_LE(detail::incircle(a, b, pc, d), 1e-12 * scale);
    }
}

TEST(GeneratePlanar, RejectsNonPositiveResolution)
{
    EXPECT_THROW(generate_planar(DomainKind::ThreeDirectional, 0, 0), MeshError);
}

TEST(DomainKindNames, RoundTrip)
{
    for (auto kind : kKinds) {
        EXPECT_EQ(parse_domain_kind(to_string(kind)), kind);
    }
    EXPECT_EQ(parse_domain_kind("four"), DomainKind::FourDirectional);
    EXPECT_FALSE(parse_domain_kind("d").has_value());
}

TEST(Subdivide, QuadruplesFacesAndHalvesMeshSize)
{
    for (auto kind : kKinds) {
        const auto m = generate_planar(kind, 3, 2);
        const auto s = subdivide_midpoint(m);
        EXPECT_EQ(s.num_faces(), 4 * m.num_faces());
        EXPECT_DOUBLE_EQ(mesh_stats(s).mesh_size_r, 0.5 * mesh_stats(m).mesh_size_r);
        EXPECT_EQ(euler_characteristic(s), 1);
    }
}

TEST(Subdivide, TwoFacesBecomeEight)
{
    EXPECT_EQ(subdivide_midpoint(generate_planar(DomainKind::ThreeDirectional, 1, 0)).num_faces(), 8);
}

TEST(Subdivide, KeepsCoarseVerticesFirst)
{
    const auto m = generate_planar(DomainKind::Unstructured, 4, 9);
    const auto s = subdivide_midpoint(m);
    for (Index v = 0; v < m.num_vertices(); ++v) {
        EXPECT_EQ(s.vertex(v), m.vertex(v));
    }
}

TEST(Icosphere, CountsAndRadius)
{
    for (int l = 0; l <= 3; ++l) {
        const auto m = make_icosphere(l);
        const Index faces = 20 * (Index{1} << (2 * l));
        EXPECT_EQ(m.num_faces(), faces);
        EXPECT_EQ(m.num_vertices(), faces / 2 + 2);
        EXPECT_EQ(euler_characteristic(m), 2);
        for (const auto& p : m.vertices()) {
            EXPECT_NEAR(p.norm(), 1.0, 1e-15);
        }
    }
}

TEST(Icosphere, FacesPointOutward)
{
    const auto m = make_icosphere(2);
    for (const auto& f : m.faces()) {
        const Vec3 a = m.vertex(f[0]), b = m.vertex(f[1]), c = m.vertex(f[2]);
        EXPECT_GT((b - a).cross(c - a).dot(a + b + c), 0.0);
    }
}
