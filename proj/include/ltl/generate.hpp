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

#include "ltl/mesh.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ltl
{

/** @brief Triangulation pattern of the unit square */
enum class DomainKind { ThreeDirectional, FourDirectional, Unstructured };

inline std::string_view to_string(DomainKind kind)
{
    switch (kind) {
        case DomainKind::ThreeDirectional:
            return "a";
        case DomainKind::FourDirectional:
            return "b";
        case DomainKind::Unstructured:
            return "c";
    }
    return "?";
}

/** Accepts a/b/c and three/four/unstructured */
inline std::optional<DomainKind> parse_domain_kind(std::string_view s)
{
    if (s == "a" || s == "three") {
        return DomainKind::ThreeDirectional;
    }
    if (s == "b" || s == "four") {
        return DomainKind::FourDirectional;
    }
    if (s == "c" || s == "unstructured") {
        return DomainKind::Unstructured;
    }
    return std::nullopt;
}

namespace detail
{

/** Uniform double in [0, 1) from the raw 64-bit engine, portable across standard libraries */
inline double unit_uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double orient2d(const Vec3& a, const Vec3& b, const Vec3& c)
{
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

/** > 0 when d lies strictly inside the circumcircle of the CCW triangle (a, b, c) */
inline double incircle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d)
{
    const double adx = a.x() - d.x(), ady = a.y() - d.y();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

/** Lawson edge flips until every interior edge is locally Delaunay */
inline void make_delaunay(const std::vector<Vec3>& pts, std::vector<Face>& faces)
{
    for (int sweep = 0; sweep < 1000; ++sweep) {
        std::unordered_map<std::uint64_t, std::vector<std::pair<std::size_t, int>>> edges;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            for (int k = 0; k < 3; ++k) {
                edges[edge_key(faces[f][k], faces[f][(k + 1) % 3])].emplace_back(f, k);
            }
        }
        std::vector<char> touched(faces.size(), 0);
        bool flipped = false;
        // iterate faces in order so the flip sequence is deterministic
        for (std::size_t f = 0; f < faces.size(); ++f) {
            for (int k = 0; k < 3 && !touched[f]; ++k) {
                const auto& inc = edges[edge_key(faces[f][k], faces[f][(k + 1) % 3])];
                if (inc.size() != 2) {
                    continue;
                }
                auto [g, kg] = inc[0].first == f ? inc[1] : inc[0];
                if (touched[g]) {
                    continue;
                }
                const Index a = faces[f][k], b = faces[f][(k + 1) % 3], c = faces[f][(k + 2) % 3];
                const Index d = faces[g][(kg + 2) % 3];
                const auto& pa = pts[static_cast<std::size_t>(a)];
                const auto& pb = pts[static_cast<std::size_t>(b)];
                const auto& pc = pts[static_cast<std::size_t>(c)];
                const auto& pd = pts[static_cast<std::size_t>(d)];
                const double scale = (pa - pc).squaredNorm() * (pb - pc).squaredNorm();
                if (incircle(pa, pb, pc, pd) <= 1e-12 * scale) {
                    continue;
                }
                if (orient2d(pc, pa, pd) <= 0.0 || orient2d(pc, pd, pb) <= 0.0) {
                    continue;
                }
                faces[f] = {c, a, d};
                faces[g] = {c, d, b};
                touched[f] = touched[g] = 1;
                flipped = true;
            }
        }
        if (!flipped) {
            return;
        }
    }
    throw MeshError("make_delaunay: flip sequence did not terminate");
}

}  // namespace detail

/**
 * @brief Triangulate the unit square (z = 0)
 *
 * ThreeDirectional: n x n cells, each split by its (0,0)-(1,1) diagonal.
 * FourDirectional: n x n cells, each split into four by its center.
 * Unstructured: Delaunay triangulation of an n x n jittered grid; interior
 * points move by up to a quarter cell per axis, boundary points slide along
 * their side, corners stay put.
 */
inline Mesh generate_planar(DomainKind kind, int n, std::uint64_t seed = 0)
{
    if (n < 1) {
        throw MeshError("generate_planar: n must be >= 1");
    }
    const double h = 1.0 / n;
    const auto side = static_cast<Index>(n) + 1;
    auto grid = [side](Index i, Index j) { return j * side + i; };

    std::vector<Vec3> pts;
    std::vector<Face> faces;
    pts.reserve(static_cast<std::size_t>(side * side));
    for (Index j = 0; j <= n; ++j) {
        for (Index i = 0; i <= n; ++i) {
            pts.emplace_back(static_cast<double>(i) * h, static_cast<double>(j) * h, 0.0);
        }
    }

    switch (kind) {
        case DomainKind::ThreeDirectional:
            for (Index j = 0; j < n; ++j) {
                for (Index i = 0; i < n; ++i) {
                    faces.push_back({grid(i, j), grid(i + 1, j), grid(i + 1, j + 1)});
                    faces.push_back({grid(i, j), grid(i + 1, j + 1), grid(i, j + 1)});
                }
            }
            break;
        case DomainKind::FourDirectional:
            for (Index j = 0; j < n; ++j) {
                for (Index i = 0; i < n; ++i) {
                    const auto m = static_cast<Index>(pts.size());
                    pts.emplace_back((static_cast<double>(i) + 0.5) * h,
                                     (static_cast<double>(j) + 0.5) * h, 0.0);
                    faces.push_back({grid(i, j), grid(i + 1, j), m});
                    faces.push_back({grid(i + 1, j), grid(i + 1, j + 1), m});
                    faces.push_back({grid(i + 1, j + 1), grid(i, j + 1), m});
                    faces.push_back({grid(i, j + 1), grid(i, j), m});
                }
            }
            break;
        case DomainKind::Unstructured: {
            std::mt19937_64 rng(seed);
            const double amp = 0.25 * h;
            for (Index j = 0; j <= n; ++j) {
                for (Index i = 0; i <= n; ++i) {
                    const double dx = (2.0 * detail::unit_uniform(rng) - 1.0) * amp;
                    const double dy = (2.0 * detail::unit_uniform(rng) - 1.0) * amp;
                    auto& p = pts[static_cast<std::size_t>(grid(i, j))];
                    const bool x_fixed = i == 0 || i == n;
                    const bool y_fixed = j == 0 || j == n;
                    if (!x_fixed) {
                        p.x() += dx;
                    }
                    if (!y_fixed) {
                        p.y() += dy;
                    }
                }
            }
            for (Index j = 0; j < n; ++j) {
                for (Index i = 0; i < n; ++i) {
                    const auto a = grid(i, j), b = grid(i + 1, j), c = grid(i + 1, j + 1),
                               d = grid(i, j + 1);
                    auto ok = [&](Index p, Index q, Index r) {
                        return detail::orient2d(pts[static_cast<std::size_t>(p)],
                                                pts[static_cast<std::size_t>(q)],
                                                pts[static_cast<std::size_t>(r)]) > 0.0;
                    };
                    if (ok(a, b, c) && ok(a, c, d)) {
                        faces.push_back({a, b, c});
                        faces.push_back({a, c, d});
                    } else {
                        faces.push_back({a, b, d});
                        faces.push_back({b, c, d});
                    }
                }
            }
            detail::make_delaunay(pts, faces);
            break;
        }
    }
    return Mesh(std::move(pts), std::move(faces));
}

/**
 * @brief 1-to-4 split of every face through edge midpoints
 *
 * Original vertices keep their indices; midpoints are appended in order of
 * first encounter while scanning faces.
 */
inline Mesh subdivide_midpoint(const Mesh& mesh)
{
    std::vector<Vec3> pts = mesh.vertices();
    std::unordered_map<std::uint64_t, Index> mid;
    mid.reserve(static_cast<std::size_t>(mesh.num_faces()) * 2);
    auto midpoint = [&](Index a, Index b) {
        auto [it, inserted] = mid.emplace(detail::edge_key(a, b), static_cast<Index>(pts.size()));
        if (inserted) {
            pts.push_back(0.5 * (mesh.vertex(a) + mesh.vertex(b)));
        }
        return it->second;
    };
    std::vector<Face> faces;
    faces.reserve(static_cast<std::size_t>(mesh.num_faces()) * 4);
    for (const auto& t : mesh.faces()) {
        const auto ab = midpoint(t[0], t[1]);
        const auto bc = midpoint(t[1], t[2]);
        const auto ca = midpoint(t[2], t[0]);
        faces.push_back({t[0], ab, ca});
        faces.push_back({ab, t[1], bc});
        faces.push_back({ca, bc, t[2]});
        faces.push_back({ab, bc, ca});
    }
    return Mesh(std::move(pts), std::move(faces));
}

/** @brief Unit icosahedron subdivided @p levels times, vertices projected to the sphere */
inline Mesh make_icosphere(int levels)
{
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> pts{{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                          {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (auto& p : pts) {
        p.normalize();
    }
    std::vector<Face> faces{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                            {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                            {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                            {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    Mesh mesh(std::move(pts), std::move(faces));
    for (int l = 0; l < levels; ++l) {
        mesh = subdivide_midpoint(mesh);
        auto v = mesh.vertices();
        for (auto& p : v) {
            p.normalize();
        }
        mesh = mesh.with_vertices(std::move(v));
    }
    return mesh;
}

}  // namespace ltl
