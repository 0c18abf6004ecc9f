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

#include "ltl/configuration.hpp"
#include "ltl/mesh.hpp"
#include "ltl/parallel.hpp"
#include "ltl/tangent_lifting.hpp"

#include <Eigen/QR>

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ltl
{

// clang-format off
/** @brief Discrete Laplace-Beltrami schemes */
enum class OperatorKind {
    LTL,                ///< local tangential lifting, 6-point formula
    WeightedUniform,    ///< normalized uniform weights
    WeightedFujiwara,   ///< normalized inverse edge length weights
    WeightedCotangent,  ///< normalized cotangent weights
    Mayer,              ///< Green's formula with edge-length fluxes
    DesbrunFlow,        ///< area-normalized cotangent formula
    XuGreen,            ///< Green's formula with vertex gradients
};
// clang-format on

inline constexpr std::array<OperatorKind, 7> all_operator_kinds{
    OperatorKind::LTL,   OperatorKind::WeightedUniform, OperatorKind::WeightedFujiwara, OperatorKind::WeightedCotangent,
    OperatorKind::Mayer, OperatorKind::DesbrunFlow,     OperatorKind::XuGreen};

inline std::string_view to_string(OperatorKind kind)
{
    switch (kind) {
        case OperatorKind::LTL:
            return "ltl";
        case OperatorKind::WeightedUniform:
            return "uniform";
        case OperatorKind::WeightedFujiwara:
            return "fujiwara";
        case OperatorKind::WeightedCotangent:
            return "cotangent";
        case OperatorKind::Mayer:
            return "mayer";
        case OperatorKind::DesbrunFlow:
            return "desbrun";
        case OperatorKind::XuGreen:
            return "xu";
    }
    return "?";
}

inline std::optional<OperatorKind> parse_operator_kind(std::string_view s)
{
    for (auto k : all_operator_kinds) {
        if (to_string(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

/** @brief Which lifted points feed the configuration equation */
enum class SelectionPolicy {
    Closest,  ///< the neighbor_count points nearest the origin
    AllRing,  ///< every lifted point of the ring
};

struct LtlOptions {
    int neighbor_count{5};
    int max_ring{3};
    SelectionPolicy selection{SelectionPolicy::Closest};
    /** configurations with configuration_quality below this pull in further points; 0 keeps the plain closest rule */
    double min_quality{0.5};

    void validate() const
    {
        if (!(min_quality >= 0.0 && min_quality <= 1.0)) {
            throw std::invalid_argument("min_quality must be in [0, 1]");
        }
        if (neighbor_count < 5) {
            throw std::invalid_argument("neighbor_count must be >= 5");
        }
        if (max_ring < 1 || max_ring > 3) {
            throw std::invalid_argument("max_ring must be in [1, 3]");
        }
    }
};

/** @brief Per-vertex operator output; absent at boundary vertices and failures */
struct OperatorField {
    std::vector<std::optional<double>> values;
    std::vector<std::pair<Index, FailureKind>> failures;

    std::optional<FailureKind> failure_at(Index v) const
    {
        for (const auto& [u, kind] : failures) {
            if (u == v) {
                return kind;
            }
        }
        return std::nullopt;
    }
};

struct VectorField {
    std::vector<std::optional<Vec3>> values;
    std::vector<std::pair<Index, FailureKind>> failures;
};

namespace detail
{

inline void check_field(const Mesh& mesh, std::span<const double> h)
{
    if (h.size() != static_cast<std::size_t>(mesh.num_vertices())) {
        throw std::invalid_argument("field has " + std::to_string(h.size()) + " values for " +
                                    std::to_string(mesh.num_vertices()) + " vertices");
    }
}

/** Evaluate fn at every interior vertex in parallel, recording EvaluationErrors */
template <class T, class Fn>
std::pair<std::vector<std::optional<T>>, std::vector<std::pair<Index, FailureKind>>> map_interior(const Mesh& mesh,
                                                                                                    Fn&& fn)
{
    const auto nv = mesh.num_vertices();
    std::vector<std::optional<T>> values(static_cast<std::size_t>(nv));
    std::vector<std::optional<FailureKind>> failed(static_cast<std::size_t>(nv));
    parallel_for(nv, [&](Index v) {
        if (mesh.is_boundary_vertex(v) || mesh.vertex_faces(v).empty()) {
            return;
        }
        try {
            values[static_cast<std::size_t>(v)] = fn(v);
        } catch (const EvaluationError& e) {
            failed[static_cast<std::size_t>(v)] = e.kind();
        }
    });
    std::vector<std::pair<Index, FailureKind>> failures;
    for (Index v = 0; v < nv; ++v) {
        if (auto k = failed[static_cast<std::size_t>(v)]) {
            failures.emplace_back(v, *k);
        }
    }
    return {std::move(values), std::move(failures)};
}

/** cot of the angle at apex in the triangle (apex, p, q) */
inline double cot_at(const Vec3& apex, const Vec3& p, const Vec3& q)
{
    const Vec3 a = p - apex;
    const Vec3 b = q - apex;
    const double s = a.cross(b).norm();
    if (!(s > 1e-12 * a.norm() * b.norm())) {
        throw EvaluationError(FailureKind::DegenerateAngle, "angle within 1e-12 of 0 or pi");
    }
    return a.dot(b) / s;
}

inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c)
{
    return 0.5 * (b - a).cross(c - a).norm();
}

/** Interior one-ring, failing with BoundaryEdge on an open fan */
inline OneRing closed_ring(const Mesh& mesh, Index v)
{
    auto ring = one_ring(mesh, v);
    if (ring.is_boundary) {
        throw EvaluationError(FailureKind::BoundaryEdge, "vertex " + std::to_string(v) + " has an open fan");
    }
    return ring;
}

inline double ring_area(const Mesh& mesh, const OneRing& ring)
{
    double area = 0.0;
    for (auto f : ring.incident_faces) {
        const auto& t = mesh.face(f);
        area += triangle_area(mesh.vertex(t[0]), mesh.vertex(t[1]), mesh.vertex(t[2]));
    }
    if (!(area > 0.0)) {
        throw EvaluationError(FailureKind::DegenerateFace, "zero one-ring area");
    }
    return area;
}

/** cot alpha_i + cot beta_i for every neighbor of a closed ring */
inline std::vector<double> cotangent_sums(const Mesh& mesh, const OneRing& ring)
{
    const auto k = ring.neighbors.size();
    const Vec3& p = mesh.vertex(ring.center);
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Vec3& vi = mesh.vertex(ring.neighbors[i]);
        const Vec3& prev = mesh.vertex(ring.neighbors[(i + k - 1) % k]);
        const Vec3& next = mesh.vertex(ring.neighbors[(i + 1) % k]);
        w[i] = cot_at(prev, p, vi) + cot_at(next, p, vi);
    }
    return w;
}

inline std::vector<double> lifted_samples(std::span<const double> h, const std::vector<Index>& ids)
{
    std::vector<double> out;
    out.reserve(ids.size());
    for (auto i : ids) {
        out.push_back(h[static_cast<std::size_t>(i)]);
    }
    return out;
}

}  // namespace detail

/**
 * @brief Conditioning of a configuration: D / sum |alpha_i| (x_i^2 + y_i^2)
 *
 * Lies in (0, 1] for a positive denominator and equals 1 when every weight is
 * non-negative. Small values mean the Taylor remainders are amplified.
 */
inline double configuration_quality(const ConfigurationSolution& sol)
{
    double total = 0.0;
    for (std::size_t i = 0; i < sol.points.size(); ++i) {
        total += std::abs(sol.alphas[static_cast<Eigen::Index>(i)]) * sol.points[i].squaredNorm();
    }
    return total > 0.0 ? sol.denominator / total : 0.0;
}

/**
 * @brief Configuration weights for v in the given tangent frame
 *
 * Lifts the 1-ring and solves over the neighbor_count closest points. When
 * the ring is too small, or the solution is degenerate or its quality is
 * below opts.min_quality, the next closest lifted points are added one at a
 * time, then the 2- and 3-ring are tried. Returns the first solution that
 * meets min_quality, else the best one seen.
 */
inline ConfigurationSolution ltl_configuration(const Mesh& mesh, Index v, const TangentFrame& frame,
                                               const LtlOptions& opts = {})
{
    std::optional<ConfigurationSolution> best;
    for (int depth = 1; depth <= opts.max_ring; ++depth) {
        const auto poly = lift_ring(mesh, v, frame, depth);
        const auto available = poly.coords.size();
        if (available < static_cast<std::size_t>(opts.neighbor_count)) {
            continue;
        }
        const std::size_t first =
            opts.selection == SelectionPolicy::AllRing ? available : static_cast<std::size_t>(opts.neighbor_count);
        for (std::size_t count = first; count <= available; ++count) {
            // lift_ring already orders points by radius with the same tie rule as select_neighbors
            PointSet2D ps{{poly.coords.begin(), poly.coords.begin() + static_cast<std::ptrdiff_t>(count)},
                          {poly.neighbor_ids.begin(), poly.neighbor_ids.begin() + static_cast<std::ptrdiff_t>(count)}};
            try {
                auto sol = solve_configuration(ps);
                const double quality = configuration_quality(sol);
                if (quality >= opts.min_quality) {
                    return sol;
                }
                if (!best || quality > configuration_quality(*best)) {
                    best = std::move(sol);
                }
            } catch (const EvaluationError& e) {
                if (e.kind() != FailureKind::DegenerateConfiguration) {
                    throw;
                }
            }
        }
    }
    if (best) {
        return *best;
    }
    throw EvaluationError(FailureKind::DegenerateConfiguration,
                          "no usable configuration within the " + std::to_string(opts.max_ring) + "-ring of vertex " +
                              std::to_string(v));
}

/** @brief LTL Laplacian of h at v using an explicit tangent frame */
inline double ltl_at_vertex(const Mesh& mesh, std::span<const double> h, Index v, const TangentFrame& frame,
                            const LtlOptions& opts = {})
{
    const auto sol = ltl_configuration(mesh, v, frame, opts);
    const auto values = detail::lifted_samples(h, sol.selected);
    return laplacian_from_configuration(sol, values, h[static_cast<std::size_t>(v)]);
}

/** @brief LTL discrete Laplace-Beltrami operator at every interior vertex */
inline OperatorField lb_ltl(const Mesh& mesh, std::span<const double> h, const LtlOptions& opts = {})
{
    opts.validate();
    detail::check_field(mesh, h);
    auto [values, failures] = detail::map_interior<double>(
        mesh, [&](Index v) { return ltl_at_vertex(mesh, h, v, tangent_frame(mesh, v), opts); });
    return {std::move(values), std::move(failures)};
}

enum class WeightScheme { Uniform, Fujiwara, Cotangent };

/** @brief sum w_i (h(v_i) - h(v)) with weights normalized to sum to one */
inline OperatorField lb_weighted(const Mesh& mesh, std::span<const double> h, WeightScheme scheme)
{
    detail::check_field(mesh, h);
    auto [values, failures] = detail::map_interior<double>(mesh, [&](Index v) {
        const auto ring = detail::closed_ring(mesh, v);
        const auto k = ring.neighbors.size();
        std::vector<double> w(k, 1.0);
        if (scheme == WeightScheme::Fujiwara) {
            for (std::size_t i = 0; i < k; ++i) {
                const double len = (mesh.vertex(ring.neighbors[i]) - mesh.vertex(v)).norm();
                if (!(len > 0.0)) {
                    throw EvaluationError(FailureKind::ZeroLengthEdge, "zero-length edge");
                }
                w[i] = 1.0 / len;
            }
        } else if (scheme == WeightScheme::Cotangent) {
            w = detail::cotangent_sums(mesh, ring);
        }
        double total = 0.0;
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            total += w[i];
            sum += w[i] * (h[static_cast<std::size_t>(ring.neighbors[i])] - h[static_cast<std::size_t>(v)]);
        }
        if (!(std::abs(total) > 1e-300)) {
            throw EvaluationError(FailureKind::ZeroDenominator, "weights sum to zero");
        }
        return sum / total;
    });
    return {std::move(values), std::move(failures)};
}

/**
 * @brief Mayer's Green-formula discretization
 *
 * (1/A) sum (|v_k - v_i| + |v_m - v_i|) / (2 |v - v_i|) (h_i - h), with
 * v_k, v_m the ring neighbors on either side of v_i and A the one-ring area.
 */
inline OperatorField lb_mayer(const Mesh& mesh, std::span<const double> h)
{
    detail::check_field(mesh, h);
    auto [values, failures] = detail::map_interior<double>(mesh, [&](Index v) {
        const auto ring = detail::closed_ring(mesh, v);
        const auto k = ring.neighbors.size();
        const Vec3& p = mesh.vertex(v);
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const Vec3& vi = mesh.vertex(ring.neighbors[i]);
            const Vec3& vk = mesh.vertex(ring.neighbors[(i + k - 1) % k]);
            const Vec3& vm = mesh.vertex(ring.neighbors[(i + 1) % k]);
            const double spoke = (vi - p).norm();
            if (!(spoke > 0.0)) {
                throw EvaluationError(FailureKind::ZeroLengthEdge, "zero-length edge");
            }
            sum += ((vk - vi).norm() + (vm - vi).norm()) / (2.0 * spoke) *
                   (h[static_cast<std::size_t>(ring.neighbors[i])] - h[static_cast<std::size_t>(v)]);
        }
        return sum / detail::ring_area(mesh, ring);
    });
    return {std::move(values), std::move(failures)};
}

/** @brief (3/A) sum (cot alpha_i + cot beta_i)/2 (h_i - h), signed differences */
inline OperatorField lb_desbrun(const Mesh& mesh, std::span<const double> h)
{
    detail::check_field(mesh, h);
    auto [values, failures] = detail::map_interior<double>(mesh, [&](Index v) {
        const auto ring = detail::closed_ring(mesh, v);
        const auto w = detail::cotangent_sums(mesh, ring);
        double sum = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            sum += 0.5 * w[i] * (h[static_cast<std::size_t>(ring.neighbors[i])] - h[static_cast<std::size_t>(v)]);
        }
        return 3.0 * sum / detail::ring_area(mesh, ring);
    });
    return {std::move(values), std::move(failures)};
}

/**
 * @brief Surface gradient of h at v from a least-squares quadratic fit
 *
 * Fits h_i - h(v) = a x + b y + c x^2 + d xy + e y^2 over the lifted ring and
 * returns a e1 + b e2. Extends the ring like the LTL operator when the 1-ring
 * is too small or the fit is rank deficient.
 */
inline Vec3 gradient_ltl(const Mesh& mesh, std::span<const double> h, Index v, const LtlOptions& opts = {})
{
    const TangentFrame frame = tangent_frame(mesh, v);
    const double hv = h[static_cast<std::size_t>(v)];
    for (int depth = 1; depth <= opts.max_ring; ++depth) {
        const auto poly = lift_ring(mesh, v, frame, depth);
        const auto m = static_cast<Eigen::Index>(poly.coords.size());
        if (m < 5) {
            continue;
        }
        double mean_r2 = 0.0;
        for (const auto& c : poly.coords) {
            mean_r2 += c.squaredNorm();
        }
        const double scale = std::sqrt(mean_r2 / static_cast<double>(m));
        if (!(scale > 0.0)) {
            break;
        }
        Eigen::MatrixXd a(m, 5);
        Eigen::VectorXd rhs(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const Vec2 q = poly.coords[static_cast<std::size_t>(i)] / scale;
            a.row(i) << q.x(), q.y(), q.x() * q.x(), q.x() * q.y(), q.y() * q.y();
            rhs[i] = h[static_cast<std::size_t>(poly.neighbor_ids[static_cast<std::size_t>(i)])] - hv;
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
        qr.setThreshold(1e-10);
        if (qr.rank() < 5) {
            continue;
        }
        const Eigen::VectorXd coef = qr.solve(rhs);
        return (coef[0] / scale) * frame.e1 + (coef[1] / scale) * frame.e2;
    }
    throw EvaluationError(FailureKind::RankDeficientFit, "quadratic fit is rank deficient at vertex " + std::to_string(v));
}

/**
 * @brief Xu's Green-formula discretization
 *
 * (1/2A) sum <g_i + g_{i+1}, nu_i> |v_{i+1} - v_i| over the one-ring boundary
 * edges, where g are quadratic-fit vertex gradients and nu_i is the unit
 * normal of edge (v_i, v_{i+1}) in its face, pointing away from v.
 */
inline OperatorField lb_xu_green(const Mesh& mesh, std::span<const double> h, const LtlOptions& opts = {})
{
    detail::check_field(mesh, h);
    const auto nv = mesh.num_vertices();
    std::vector<std::optional<Vec3>> grad(static_cast<std::size_t>(nv));
    std::vector<FailureKind> grad_failure(static_cast<std::size_t>(nv), FailureKind::RankDeficientFit);
    parallel_for(nv, [&](Index v) {
        if (mesh.vertex_faces(v).empty()) {
            return;
        }
        try {
            grad[static_cast<std::size_t>(v)] = gradient_ltl(mesh, h, v, opts);
        } catch (const EvaluationError& e) {
            grad_failure[static_cast<std::size_t>(v)] = e.kind();
        }
    });
    auto gradient = [&](Index u) -> const Vec3& {
        const auto& g = grad[static_cast<std::size_t>(u)];
        if (!g) {
            throw EvaluationError(grad_failure[static_cast<std::size_t>(u)],
                                  "no gradient at vertex " + std::to_string(u));
        }
        return *g;
    };
    auto [values, failures] = detail::map_interior<double>(mesh, [&](Index v) {
        const auto ring = detail::closed_ring(mesh, v);
        const auto k = ring.neighbors.size();
        const Vec3& p = mesh.vertex(v);
        double flux = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const Index a = ring.neighbors[i];
            const Index b = ring.neighbors[(i + 1) % k];
            const Vec3 edge = mesh.vertex(b) - mesh.vertex(a);
            const Vec3 face_normal = (mesh.vertex(a) - p).cross(mesh.vertex(b) - p);
            const Vec3 outward = edge.cross(face_normal);
            const double len = outward.norm();
            if (!(len > 0.0)) {
                throw EvaluationError(FailureKind::DegenerateFace, "degenerate ring face");
            }
            flux += (gradient(a) + gradient(b)).dot(outward / len) * edge.norm();
        }
        return flux / (2.0 * detail::ring_area(mesh, ring));
    });
    return {std::move(values), std::move(failures)};
}

/** @brief Dispatch on the operator kind */
inline OperatorField evaluate_operator(OperatorKind kind, const Mesh& mesh, std::span<const double> h,
                                       const LtlOptions& opts = {})
{
    switch (kind) {
        case OperatorKind::LTL:
            return lb_ltl(mesh, h, opts);
        case OperatorKind::WeightedUniform:
            return lb_weighted(mesh, h, WeightScheme::Uniform);
        case OperatorKind::WeightedFujiwara:
            return lb_weighted(mesh, h, WeightScheme::Fujiwara);
        case OperatorKind::WeightedCotangent:
            return lb_weighted(mesh, h, WeightScheme::Cotangent);
        case OperatorKind::Mayer:
            return lb_mayer(mesh, h);
        case OperatorKind::DesbrunFlow:
            return lb_desbrun(mesh, h);
        case OperatorKind::XuGreen:
            return lb_xu_green(mesh, h, opts);
    }
    throw std::invalid_argument("unknown operator kind");
}

/** @brief Operator applied to the x, y and z coordinate functions */
inline VectorField apply_to_coordinates(OperatorKind kind, const Mesh& mesh, const LtlOptions& opts = {})
{
    const auto nv = static_cast<std::size_t>(mesh.num_vertices());
    VectorField out;
    out.values.assign(nv, std::nullopt);
    if (kind == OperatorKind::LTL) {
        opts.validate();
        // one configuration solve per vertex serves all three components
        auto [values, failures] = detail::map_interior<Vec3>(mesh, [&](Index v) {
            const auto sol = ltl_configuration(mesh, v, tangent_frame(mesh, v), opts);
            const Vec3& p = mesh.vertex(v);
            Vec3 lap;
            std::vector<double> samples(sol.selected.size());
            for (int c = 0; c < 3; ++c) {
                for (std::size_t i = 0; i < samples.size(); ++i) {
                    samples[i] = mesh.vertex(sol.selected[i])[c];
                }
                lap[c] = laplacian_from_configuration(sol, samples, p[c]);
            }
            return lap;
        });
        return {std::move(values), std::move(failures)};
    }
    std::vector<double> coord(nv);
    std::vector<std::optional<FailureKind>> failed(nv);
    std::vector<Vec3> acc(nv, Vec3::Zero());
    std::vector<int> present(nv, 0);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < nv; ++i) {
            coord[i] = mesh.vertices()[i][c];
        }
        const auto field = evaluate_operator(kind, mesh, coord, opts);
        for (std::size_t i = 0; i < nv; ++i) {
            if (field.values[i]) {
                acc[i][c] = *field.values[i];
                ++present[i];
            }
        }
        for (const auto& [v, k] : field.failures) {
            failed[static_cast<std::size_t>(v)] = k;
        }
    }
    for (std::size_t i = 0; i < nv; ++i) {
        if (present[i] == 3) {
            out.values[i] = acc[i];
        } else if (failed[i]) {
            out.failures.emplace_back(static_cast<Index>(i), *failed[i]);
        }
    }
    return out;
}

/** @brief LTL mean-curvature normal 2Hn, i.e. the LTL operator on the coordinate functions */
inline VectorField mean_curvature_vector(const Mesh& mesh, const LtlOptions& opts = {})
{
    return apply_to_coordinates(OperatorKind::LTL, mesh, opts);
}

}  // namespace ltl
