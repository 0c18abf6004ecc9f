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
#pragma once

#include "ltl/ltl.hpp"

#include <cmath>
#include <random>
#include <string_view>
#include <vector>

namespace ltl::test
{

// Regular octahedron with vertices on the unit axes, outward CCW faces
inline constexpr std::string_view kOctahedronOff = R"(OFF
6 8 0
1 0 0
-1 0 0
0 1 0
0 -1 0
0 0 1
0 0 -1
3 0 2 4
3 2 1 4
3 1 3 4
3 3 0 4
3 2 0 5
3 1 2 5
3 3 1 5
3 0 3 5
)";

inline Mesh octahedron()
{
    return load_mesh(kOctahedronOff, MeshFormat::OFF);
}

/** Regular hexagon of circumradius s around the origin, z = 0 */
inline Mesh flat_hexagon(double s = 1.0)
{
    std::vector<Vec3> pts{Vec3::Zero()};
    for (int k = 0; k < 6; ++k) {
        const double t = k * M_PI / 3.0;
        pts.emplace_back(s * std::cos(t), s * std::sin(t), 0.0);
    }
    std::vector<Face> faces;
    for (Index k = 0; k < 6; ++k) {
        faces.push_back({0, 1 + k, 1 + (k + 1) % 6});
    }
    return Mesh(std::move(pts), std::move(faces));
}

inline std::vector<double> sample(const Mesh& mesh, auto&& fn)
{
    std::vector<double> h;
    h.reserve(static_cast<std::size_t>(mesh.num_vertices()));
    for (const auto& p : mesh.vertices()) {
        h.push_back(fn(p));
    }
    return h;
}

/** Rotation about a random axis by a random angle */
inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Vec3 axis(g(rng), g(rng), g(rng));
    axis.normalize();
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    return Eigen::AngleAxisd(u(rng), axis).toRotationMatrix();
}

/** Interior vertex nearest to (x, y) in the parameter plane */
inline Index nearest_vertex(const Mesh& mesh, double x, double y)
{
    Index best = 0;
    double d = INFINITY;
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        const auto& p = mesh.vertex(v);
        const double dv = (p.x() - x) * (p.x() - x) + (p.y() - y) * (p.y() - y);
        if (dv < d) {
            d = dv;
            best = v;
        }
    }
    return best;
}

struct Configuration {
    Mesh mesh;
    std::vector<double> h1, h2;
};

/** Seeded random graph-surface patch with two smooth fields */
inline Configuration random_configuration(std::uint64_t seed)
{
    static const std::array<AnalyticSurface, 4> surfs{surfaces::f1(), surfaces::f2(), surfaces::f3(), surfaces::f4()};
    const auto kind = static_cast<DomainKind>(seed % 3);
    Configuration c{lift_to_surface(generate_planar(kind, 5 + static_cast<int>(seed % 4), seed), surfs[seed % 4]),
                    {},
                    {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double a = u(rng), b = u(rng), k = u(rng);
    c.h1 = sample(c.mesh, [&](const Vec3& p) { return std::sin(a * p.x() + b * p.y()) + k * p.z() * p.z(); });
    c.h2 = sample(c.mesh, [&](const Vec3& p) { return std::exp(0.5 * p.x()) * (p.y() - b * p.z()); });
    return c;
}

}  // namespace ltl::test
