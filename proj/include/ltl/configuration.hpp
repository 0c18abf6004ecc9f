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

#include "ltl/common.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace ltl
{

/** @brief Points around the origin of a 2D chart and the vertices they came from */
struct PointSet2D {
    std::vector<Vec2> points;
    std::vector<Index> source_ids;

    std::size_t size() const noexcept { return points.size(); }
};

using ConfigurationMatrix = Eigen::Matrix<double, 4, Eigen::Dynamic>;

/**
 * @brief Weights alpha annihilating the first moments, the mixed moment and
 * the second-moment imbalance of a point set
 *
 * alphas is unit-norm and aligned with @c selected / @c points. The sign is
 * fixed so that denominator = sum alpha_i (x_i^2 + y_i^2) is positive.
 */
struct ConfigurationSolution {
    Eigen::VectorXd alphas;
    std::vector<Index> selected;
    std::vector<Vec2> points;
    double denominator{0.0};
    /** sum alpha_i * {x_i, y_i, x_i y_i, x_i^2 - y_i^2} */
    Eigen::Vector4d residuals{Eigen::Vector4d::Zero()};
    /** sum alpha_i x_i^2 */
    double second_moment{0.0};
    /** mean of x_i^2 + y_i^2 over the points */
    double mean_square_radius{0.0};
    /** Dimension of the numerical null space the weights were drawn from */
    int null_dimension{0};
};

/** @brief Rows [x_i], [y_i], [x_i y_i], [x_i^2 - y_i^2] */
inline ConfigurationMatrix build_configuration_matrix(const PointSet2D& ps)
{
    ConfigurationMatrix m(4, static_cast<Eigen::Index>(ps.size()));
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double x = ps.points[i].x();
        const double y = ps.points[i].y();
        m.col(static_cast<Eigen::Index>(i)) << x, y, x * y, x * x - y * y;
    }
    return m;
}

/**
 * @brief The @p target points closest to the origin
 *
 * Radii equal to a relative 1e-10 are ordered by source id. Returns the
 * input unchanged when it holds fewer than @p target points.
 */
inline PointSet2D select_neighbors(const PointSet2D& ps, std::size_t target = 5)
{
    if (ps.size() <= target) {
        return ps;
    }
    std::vector<double> r2(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        r2[i] = ps.points[i].squaredNorm();
    }
    std::vector<std::size_t> order(ps.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return r2[a] < r2[b] || (r2[a] == r2[b] && ps.source_ids[a] < ps.source_ids[b]);
    });
    for (std::size_t start = 0; start < order.size();) {
        std::size_t end = start + 1;
        const double base = r2[order[start]];
        while (end < order.size() && r2[order[end]] - base <= 1e-10 * base) {
            ++end;
        }
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(start), order.begin() + static_cast<std::ptrdiff_t>(end),
                  [&](std::size_t a, std::size_t b) { return ps.source_ids[a] < ps.source_ids[b]; });
        start = end;
    }
    PointSet2D out;
    for (std::size_t k = 0; k < target; ++k) {
        out.points.push_back(ps.points[order[k]]);
        out.source_ids.push_back(ps.source_ids[order[k]]);
    }
    return out;
}

/**
 * @brief Solve the configuration equation M alpha = 0 with |alpha| = 1
 *
 * M is factored by SVD after rescaling the points to unit mean square radius
 * (alpha is scale invariant). Singular values at or below 1e-8 * sigma_max are
 * treated as zero. Within the resulting null space the weights are the unit
 * vector with the largest denominator, i.e. the normalized projection of the
 * radius vector (x_i^2 + y_i^2) onto the null space. For five points in
 * general position the null space is a line and this is the usual solution.
 *
 * Throws EvaluationError(DegenerateConfiguration) for fewer than five points
 * or when every null vector has a vanishing denominator (e.g. collinear points).
 */
inline ConfigurationSolution solve_configuration(const PointSet2D& ps)
{
    const auto n = static_cast<Eigen::Index>(ps.size());
    if (n < 5) {
        throw EvaluationError(FailureKind::DegenerateConfiguration,
                              "configuration needs at least 5 points, got " + std::to_string(n));
    }

    Eigen::VectorXd radius2(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        radius2[i] = ps.points[static_cast<std::size_t>(i)].squaredNorm();
    }
    const double mean_r2 = radius2.mean();
    if (!(mean_r2 > 0.0) || !std::isfinite(mean_r2)) {
        throw EvaluationError(FailureKind::DegenerateConfiguration, "points coincide with the origin");
    }

    const double inv_scale = 1.0 / std::sqrt(mean_r2);
    PointSet2D scaled;
    scaled.points.reserve(ps.size());
    for (const auto& p : ps.points) {
        scaled.points.push_back(p * inv_scale);
    }
    const ConfigurationMatrix m = build_configuration_matrix(scaled);

    Eigen::JacobiSVD<ConfigurationMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double tol = 1e-8 * sigma[0];
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        rank += sigma[k] > tol ? 1 : 0;
    }
    const auto null_basis = svd.matrixV().rightCols(n - rank);

    const Eigen::VectorXd unit_radius2 = radius2 / mean_r2;
    const Eigen::VectorXd coeffs = null_basis.transpose() * unit_radius2;
    const double scaled_denominator = coeffs.norm();
    // scaled_denominator is D for unit-norm alpha in coordinates with mean r^2 = 1
    if (!(scaled_denominator > 1e-10)) {
        throw EvaluationError(FailureKind::DegenerateConfiguration,
                              "no null vector of the configuration matrix has a nonzero denominator");
    }

    ConfigurationSolution sol;
    sol.alphas = null_basis * coeffs / scaled_denominator;
    sol.selected = ps.source_ids;
    sol.points = ps.points;
    sol.null_dimension = static_cast<int>(n - rank);
    sol.mean_square_radius = mean_r2;
    sol.denominator = sol.alphas.dot(radius2);
    sol.residuals = build_configuration_matrix(ps) * sol.alphas;
    sol.second_moment = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = ps.points[static_cast<std::size_t>(i)].x();
        sol.second_moment += sol.alphas[i] * x * x;
    }
    return sol;
}

namespace detail
{
inline double weighted_difference(const ConfigurationSolution& sol, std::span<const double> values, double center)
{
    if (values.size() != static_cast<std::size_t>(sol.alphas.size())) {
        throw EvaluationError(FailureKind::MissingValue, "value count does not match the configuration");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum += sol.alphas[static_cast<Eigen::Index>(i)] * (values[i] - center);
    }
    return sum;
}

inline void check_denominator(const ConfigurationSolution& sol)
{
    if (!(std::abs(sol.denominator) >= 1e-10 * sol.mean_square_radius) || sol.mean_square_radius <= 0.0) {
        throw EvaluationError(FailureKind::ZeroDenominator, "configuration denominator vanishes");
    }
}
}  // namespace detail

/** @brief 4 sum alpha_i (f_i - f_0) / sum alpha_i (x_i^2 + y_i^2) */
inline double laplacian_from_configuration(const ConfigurationSolution& sol, std::span<const double> values,
                                           double center)
{
    detail::check_denominator(sol);
    return 4.0 * detail::weighted_difference(sol, values, center) / sol.denominator;
}

/** @brief 2 sum alpha_i (f_i - f_0) / sum alpha_i x_i^2; agrees with the symmetric form when (IV) holds */
inline double laplacian_second_moment_form(const ConfigurationSolution& sol, std::span<const double> values,
                                           double center)
{
    detail::check_denominator(sol);
    return 2.0 * detail::weighted_difference(sol, values, center) / sol.second_moment;
}

}  // namespace ltl
