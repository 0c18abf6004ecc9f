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

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ltl
{

/** @brief Approximate vertex normal plus an orthonormal basis of its tangent plane */
struct TangentFrame {
    Vec3 normal{Vec3::UnitZ()};
    Vec3 e1{Vec3::UnitX()};
    Vec3 e2{Vec3::UnitY()};
};

/**
 * @brief Local tangential polygon of a vertex
 *
 * coords[i] are the tangent-plane coordinates of neighbor_ids[i], ordered by
 * distance from the origin.
 */
struct LiftedPolygon {
    Index center{-1};
    std::vector<Index> neighbor_ids;
    std::vector<Vec2> coords;
    std::optional<std::vector<double>> lifted_values;
    std::optional<double> center_value;
};

namespace detail
{
/** Unit face normal, or nullopt when the triangle is degenerate */
inline std::optional<Vec3> face_unit_normal(const Vec3& a, const Vec3& b, const Vec3& c)
{
    const Vec3 u = b - a;
    const Vec3 w = c - a;
    const Vec3 n = u.cross(w);
    const double len = n.norm();
    if (!(len > 1e-14 * u.norm() * w.norm())) {
        return std::nullopt;
    }
    return n / len;
}
}  // namespace detail

/**
 * @brief Centroid-weighted average of incident face normals
 *
 * Each face normal is weighted by 1/|G_T - v|^2, G_T the face centroid.
 * Boundary vertices use their partial fan.
 */
inline Vec3 vertex_normal(const Mesh& mesh, Index v)
{
    if (!mesh.valid_vertex(v)) {
        throw MeshError("vertex_normal: invalid vertex index " + std::to_string(v));
    }
    const Vec3& p = mesh.vertex(v);
    Vec3 sum = Vec3::Zero();
    double weight_total = 0.0;
    for (auto f : mesh.vertex_faces(v)) {
        const auto& t = mesh.face(f);
        const Vec3& a = mesh.vertex(t[0]);
        const Vec3& b = mesh.vertex(t[1]);
        const Vec3& c = mesh.vertex(t[2]);
        auto n = detail::face_unit_normal(a, b, c);
        if (!n) {
            throw EvaluationError(FailureKind::DegenerateFace,
                                  "zero-area face " + std::to_string(f) + " at vertex " + std::to_string(v));
        }
        const Vec3 centroid = (a + b + c) / 3.0;
        const double w = 1.0 / (centroid - p).squaredNorm();
        sum += w * *n;
        weight_total += w;
    }
    if (weight_total == 0.0) {
        throw EvaluationError(FailureKind::DegenerateFace, "isolated vertex " + std::to_string(v));
    }
    sum /= weight_total;
    const double len = sum.norm();
    if (!(len > 1e-12)) {
        throw EvaluationError(FailureKind::DegenerateFace,
                              "face normals cancel at vertex " + std::to_string(v));
    }
    return sum / len;
}

/**
 * @brief Deterministic frame for a unit normal
 *
 * e1 is the projection of the coordinate axis least aligned with the normal
 * (lowest axis on ties); e2 = normal x e1.
 */
inline TangentFrame frame_from_normal(const Vec3& normal)
{
    Eigen::Index axis = 0;
    normal.cwiseAbs().minCoeff(&axis);
    Vec3 pick = Vec3::Unit(axis);
    TangentFrame frame;
    frame.normal = normal;
    frame.e1 = (pick - pick.dot(normal) * normal).normalized();
    frame.e2 = normal.cross(frame.e1);
    return frame;
}

inline TangentFrame tangent_frame(const Mesh& mesh, Index v)
{
    return frame_from_normal(vertex_normal(mesh, v));
}

/** @brief Frame with its tangent basis rotated by @p angle about the normal */
inline TangentFrame rotate_frame(const TangentFrame& frame, double angle)
{
    TangentFrame out = frame;
    const double c = std::cos(angle), s = std::sin(angle);
    out.e1 = c * frame.e1 + s * frame.e2;
    out.e2 = -s * frame.e1 + c * frame.e2;
    return out;
}

/** @brief Project (q - p) onto the tangent plane and express it in (e1, e2) */
inline Vec2 lift_point(const TangentFrame& frame, const Vec3& p, const Vec3& q)
{
    const Vec3 d = q - p;
    const Vec3 t = d - d.dot(frame.normal) * frame.normal;
    return {t.dot(frame.e1), t.dot(frame.e2)};
}

namespace detail
{
/**
 * Sort ids by squared radius; radii equal to a relative 1e-10 count as ties
 * and are ordered by id. Keeps the order stable under rounding-level noise.
 */
inline std::vector<std::size_t> order_by_radius(std::span<const Vec2> coords, std::span<const Index> ids)
{
    std::vector<std::size_t> order(coords.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> r2(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        r2[i] = coords[i].squaredNorm();
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return r2[a] < r2[b] || (r2[a] == r2[b] && ids[a] < ids[b]);
    });
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        const double base = r2[order[start]];
        while (end < order.size() && r2[order[end]] - base <= 1e-10 * base) {
            ++end;
        }
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                  order.begin() + static_cast<std::ptrdiff_t>(end),
                  [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
        start = end;
    }
    return order;
}
}  // namespace detail

/**
 * @brief Lift the k-ring of v into the tangent plane of @p frame
 *
 * neighbor_ids holds every vertex within graph distance ring_depth, sorted by
 * lifted distance to the origin (ties by index).
 */
inline LiftedPolygon lift_ring(const Mesh& mesh, Index v, const TangentFrame& frame, int ring_depth = 1)
{
    if (ring_depth < 1) {
        throw MeshError("lift_ring: ring_depth must be >= 1");
    }
    const auto ids = k_ring(mesh, v, ring_depth);
    const Vec3& p = mesh.vertex(v);
    std::vector<Vec2> coords;
    coords.reserve(ids.size());
    for (auto u : ids) {
        coords.push_back(lift_point(frame, p, mesh.vertex(u)));
    }
    LiftedPolygon poly;
    poly.center = v;
    for (auto i : detail::order_by_radius(coords, ids)) {
        poly.neighbor_ids.push_back(ids[i]);
        poly.coords.push_back(coords[i]);
    }
    return poly;
}

/**
 * @brief Copy field values onto the polygon
 *
 * NaN entries, or ids past the end of @p h, count as missing.
 */
inline LiftedPolygon lift_function(LiftedPolygon polygon, std::span<const double> h)
{
    auto fetch = [&](Index i) {
        if (i < 0 || static_cast<std::size_t>(i) >= h.size() || std::isnan(h[static_cast<std::size_t>(i)])) {
            throw EvaluationError(FailureKind::MissingValue, "no field value at vertex " + std::to_string(i));
        }
        return h[static_cast<std::size_t>(i)];
    };
    std::vector<double> values;
    values.reserve(polygon.neighbor_ids.size());
    for (auto i : polygon.neighbor_ids) {
        values.push_back(fetch(i));
    }
    polygon.center_value = fetch(polygon.center);
    polygon.lifted_values = std::move(values);
    return polygon;
}

}  // namespace ltl
