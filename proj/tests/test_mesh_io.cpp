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

#include <filesystem>

using namespace ltl;

TEST(LoadMesh, SingleTriangleOff)
{
    const auto m = load_mesh("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2", MeshFormat::OFF);
    EXPECT_EQ(m.num_vertices(), 3);
    EXPECT_EQ(m.num_faces(), 1);
    EXPECT_EQ(m.face(0), (Face{0, 1, 2}));
    EXPECT_EQ(m.vertex(1), Vec3(1, 0, 0));
}

TEST(LoadMesh, OffCountsOnHeaderLineAndComments)
{
    const auto m = load_mesh("OFF 3 1 0\n# comment\n0 0 0\n1 0 0 # trailing\n0 1 0\n\n3 0 1 2\n", MeshFormat::OFF);
    EXPECT_EQ(m.num_faces(), 1);
}

TEST(LoadMesh, ObjQuadRejected)
{
    const std::string obj = "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n";
    try {
        load_mesh(obj, MeshFormat::OBJ);
        FAIL() << "quad accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5u);
        EXPECT_NE(std::string(e.what()).find("triangle"), std::string::npos);
    }
}

TEST(LoadMesh, ObjSlashedIndices)
{
    const auto m = load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nf 1//1 2//1 3//1\n", MeshFormat::OBJ);
    EXPECT_EQ(m.face(0), (Face{0, 1, 2}));
}

TEST(LoadMesh, OffQuadRejected)
{
    EXPECT_THROW(load_mesh("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n", MeshFormat::OFF), ParseError);
}

TEST(LoadMesh, MalformedNumbers)
{
    EXPECT_THROW(load_mesh("OFF\n3 1 0\n0 0 x\n1 0 0\n0 1 0\n3 0 1 2\n", MeshFormat::OFF), ParseError);
    EXPECT_THROW(load_mesh("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n", MeshFormat::OFF), ParseError);
    EXPECT_THROW(load_mesh("PLY\n", MeshFormat::OFF), ParseError);
}

TEST(LoadMesh, InvalidTopologyReportsLine)
{
    try {
        load_mesh("OFF\n3 2 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n3 2 1 0\n", MeshFormat::OFF);
        FAIL() << "duplicate face accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 7u);
    }
}

TEST(LoadMesh, OctahedronValence)
{
    const auto m = load_mesh(test::kOctahedronOff, MeshFormat::OFF);
    for (Index v = 0; v < m.num_vertices(); ++v) {
        EXPECT_EQ(one_ring(m, v).neighbors.size(), 4u);
    }
}

TEST(RoundTrip, OffPreservesVerticesAndFaces)
{
    const auto m = lift_to_surface(generate_planar(DomainKind::Unstructured, 6, 5), surfaces::f3());
    const auto back = load_mesh(to_off(m), MeshFormat::OFF);
    ASSERT_EQ(back.num_vertices(), m.num_vertices());
    EXPECT_EQ(back.faces(), m.faces());
    for (Index v = 0; v < m.num_vertices(); ++v) {
        EXPECT_LE((back.vertex(v) - m.vertex(v)).norm(), 1e-15);
    }
}

TEST(RoundTrip, ObjPreservesVerticesAndFaces)
{
    const auto m = make_icosphere(2);
    const auto back = load_mesh(to_obj(m), MeshFormat::OBJ);
    EXPECT_EQ(back.faces(), m.faces());
    for (Index v = 0; v < m.num_vertices(); ++v) {
        EXPECT_EQ(back.vertex(v), m.vertex(v));
    }
}

TEST(RoundTrip, Files)
{
    const auto dir = std::filesystem::temp_directory_path();
    const auto m = generate_planar(DomainKind::FourDirectional, 3, 0);
    for (const char* name : {"ltl_rt.off", "ltl_rt.OBJ"}) {
        const auto path = dir / name;
        save_mesh_file(m, path);
        const auto back = load_mesh_file(path);
        EXPECT_EQ(back.faces(), m.faces());
        std::filesystem::remove(path);
    }
    EXPECT_THROW(load_mesh_file(dir / "ltl_missing.off"), MeshError);
    EXPECT_THROW(format_from_path("mesh.ply"), MeshError);
}
