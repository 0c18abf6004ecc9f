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

#include "ltl/generate.hpp"
#include "ltl/operators.hpp"
#include "ltl/surfaces.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ltl
{

/** @brief Base resolution n of generate_planar for each domain kind */
inline int default_base_resolution(DomainKind kind)
{
    switch (kind) {
        case DomainKind::ThreeDirectional:
            return 5;
        case DomainKind::FourDirectional:
            return 10;
        case DomainKind::Unstructured:
            return 10;
    }
    return 4;
}

/** @brief Place every vertex of a planar (x, y) mesh on the graph of @p s */
inline Mesh lift_to_surface(const Mesh& planar, const AnalyticSurface& s)
{
    std::vector<Vec3> pts;
    pts.reserve(planar.vertices().size());
    for (const auto& p : planar.vertices()) {
        pts.push_back(s.point(p.x(), p.y()));
    }
    return planar.with_vertices(std::move(pts));
}

/**
 * @brief Refinement ladder over a planar domain, coarsest first
 *
 * Subdivision happens in the parameter plane; each level is then mapped
 * through z = F(x, y) so every vertex lies on the surface.
 */
inline std::vector<Mesh> build_ladder(const AnalyticSurface& s, DomainKind kind, int levels, std::uint64_t seed = 0,
                                      int base_n = 0)
{
    if (levels < 1) {
        throw std::invalid_argument("build_ladder: levels must be >= 1");
    }
    Mesh planar = generate_planar(kind, base_n > 0 ? base_n : default_base_resolution(kind), seed);
    std::vector<Mesh> out;
    out.reserve(static_cast<std::size_t>(levels));
    for (int l = 0; l < levels; ++l) {
        if (l > 0) {
            planar = subdivide_midpoint(planar);
        }
        out.push_back(lift_to_surface(planar, s));
    }
    return out;
}

/** @brief Vertices whose parameter point is inside the open square and which have no boundary neighbor */
inline std::vector<Index> interior_vertices(const Mesh& mesh)
{
    std::vector<Index> out;
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        const auto& p = mesh.vertex(v);
        if (mesh.is_boundary_vertex(v) || !(p.x() > 0.0 && p.x() < 1.0 && p.y() > 0.0 && p.y() < 1.0)) {
            continue;
        }
        bool near_boundary = false;
        for (auto u : mesh.adjacent_vertices(v)) {
            near_boundary = near_boundary || mesh.is_boundary_vertex(u);
        }
        if (!near_boundary) {
            out.push_back(v);
        }
    }
    return out;
}

struct OrderFit {
    double order{0.0};
    double constant{0.0};
    int used_points{0};
};

/**
 * @brief Least-squares fit of log(error) = log(C) + p log(r)
 *
 * Errors below 1e-13 are treated as noise floor and left out.
 */
inline OrderFit fit_order(std::span<const std::pair<double, double>> samples)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [r, err] : samples) {
        if (!(err >= 1e-13) || !(r > 0.0) || !std::isfinite(err)) {
            continue;
        }
        const double x = std::log(r), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) {
        throw std::invalid_argument("fit_order: fewer than two usable levels");
    }
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0)) {
        throw std::invalid_argument("fit_order: all usable levels share one mesh size");
    }
    OrderFit fit;
    fit.order = (n * sxy - sx * sy) / denom;
    fit.constant = std::exp((sy - fit.order * sx) / n);
    fit.used_points = n;
    return fit;
}

/** Errors this small are rounding, not discretization */
inline constexpr double noise_floor_error = 1e-9;

struct LevelResult {
    int level{0};
    double r{0.0};
    double max_error{0.0};
    Index n_vertices{0};
    double seconds{0.0};
    Index n_evaluated{0};
    Index n_failed{0};
};

struct ConvergenceReport {
    OperatorKind op{OperatorKind::LTL};
    std::string surface;
    DomainKind domain{DomainKind::Unstructured};
    std::string test_function;
    std::vector<LevelResult> levels;
    double fitted_order{0.0};
    double fitted_constant{0.0};
    /** every level's error is at or below noise_floor_error; the fit carries no information */
    bool at_noise_floor{false};
};

/** @brief Vertices a level's error is measured at */
enum class ErrorSites {
    Interior,      ///< every interior vertex of the level
    BaseVertices,  ///< the interior vertices of level 0 at every level: fixed points (x_i, y_j) of the base grid
};

struct ConvergenceOptions {
    int levels{4};
    std::uint64_t seed{0};
    int base_n{0};
    LtlOptions ltl{};
    /** record wall time per level; off keeps reports bit-reproducible */
    bool timing{false};
    ErrorSites sites{ErrorSites::Interior};
};

namespace detail
{
/** Max interior error of one operator on one mesh; returns (error, evaluated, failed) */
inline std::tuple<double, Index, Index> level_error(OperatorKind op, const Mesh& mesh, const AnalyticSurface& s,
                                                    const TestFunction& tf, const LtlOptions& opts,
                                                    std::span<const Index> interior)
{
    double worst = 0.0;
    Index evaluated = 0, failed = 0;
    if (tf.mode == TestMode::CoordinateFunctions) {
        const auto field = apply_to_coordinates(op, mesh, opts);
        for (auto v : interior) {
            const auto& got = field.values[static_cast<std::size_t>(v)];
            if (!got) {
                ++failed;
                continue;
            }
            const auto& p = mesh.vertex(v);
            worst = std::max(worst, (*got - exact_lb_coordinates(s, p.x(), p.y())).norm());
            ++evaluated;
        }
    } else {
        std::vector<double> h(static_cast<std::size_t>(mesh.num_vertices()));
        for (Index v = 0; v < mesh.num_vertices(); ++v) {
            const auto& p = mesh.vertex(v);
            h[static_cast<std::size_t>(v)] = tf.field(p.x(), p.y()).value;
        }
        const auto field = evaluate_operator(op, mesh, h, opts);
        for (auto v : interior) {
            const auto& got = field.values[static_cast<std::size_t>(v)];
            if (!got) {
                ++failed;
                continue;
            }
            const auto& p = mesh.vertex(v);
            worst = std::max(worst, std::abs(*got - exact_lb_scalar(s, tf, p.x(), p.y())));
            ++evaluated;
        }
    }
    return {worst, evaluated, failed};
}
}  // namespace detail

/**
 * @brief Max interior error of one operator across a refinement ladder, with
 * the fitted empirical order
 */
inline ConvergenceReport run_convergence(OperatorKind op, const AnalyticSurface& s, DomainKind kind,
                                         const TestFunction& tf, const ConvergenceOptions& opts = {})
{
    ConvergenceReport report;
    report.op = op;
    report.surface = s.id;
    report.domain = kind;
    report.test_function = tf.name;

    const auto ladder = build_ladder(s, kind, opts.levels, opts.seed, opts.base_n);
    const std::vector<Index> base_sites = ladder.empty() ? std::vector<Index>{} : interior_vertices(ladder.front());
    std::vector<std::pair<double, double>> samples;
    for (std::size_t l = 0; l < ladder.size(); ++l) {
        const auto& mesh = ladder[l];
        const auto sites = opts.sites == ErrorSites::BaseVertices ? base_sites : interior_vertices(mesh);
        const auto start = std::chrono::steady_clock::now();
        auto [err, evaluated, failed] = detail::level_error(op, mesh, s, tf, opts.ltl, sites);
        const auto stop = std::chrono::steady_clock::now();
        if (evaluated == 0) {
            throw std::runtime_error("run_convergence: every interior vertex failed at level " + std::to_string(l));
        }
        LevelResult lr;
        lr.level = static_cast<int>(l);
        lr.r = mesh_stats(mesh).mesh_size_r;
        lr.max_error = err;
        lr.n_vertices = mesh.num_vertices();
        lr.seconds = opts.timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
        lr.n_evaluated = evaluated;
        lr.n_failed = failed;
        report.levels.push_back(lr);
        samples.emplace_back(lr.r, lr.max_error);
    }
    report.at_noise_floor =
        std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.second <= noise_floor_error; });
    if (samples.size() >= 2) {
        try {
            const auto fit = fit_order(samples);
            report.fitted_order = fit.order;
            report.fitted_constant = fit.constant;
        } catch (const std::invalid_argument&) {
            report.at_noise_floor = true;
        }
    }
    return report;
}

namespace detail
{
inline std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}
}  // namespace detail

inline constexpr std::string_view convergence_csv_header = "operator,surface,domain,level,r,error,nv,seconds";

/** @brief One row per level, header first */
inline std::string convergence_csv(std::span<const ConvergenceReport> reports)
{
    std::ostringstream out;
    out << convergence_csv_header << "\r\n";
    for (const auto& rep : reports) {
        for (const auto& l : rep.levels) {
            out << to_string(rep.op) << ',' << rep.surface << ',' << to_string(rep.domain) << ',' << l.level << ','
                << detail::format_double(l.r) << ',' << detail::format_double(l.max_error) << ',' << l.n_vertices
                << ',' << detail::format_fixed(l.seconds, 6) << "\r\n";
        }
    }
    return out.str();
}

/**
 * @brief Operator x level error matrix with a total wall-time column
 *
 * Columns: operator, err_L0..err_Lk, order, seconds.
 */
inline std::string comparison_csv(std::span<const ConvergenceReport> reports)
{
    std::ostringstream out;
    std::size_t n_levels = 0;
    for (const auto& rep : reports) {
        n_levels = std::max(n_levels, rep.levels.size());
    }
    out << "operator";
    for (std::size_t l = 0; l < n_levels; ++l) {
        out << ",err_L" << l;
    }
    out << ",order,seconds\r\n";
    for (const auto& rep : reports) {
        out << to_string(rep.op);
        double total = 0.0;
        for (std::size_t l = 0; l < n_levels; ++l) {
            out << ',';
            if (l < rep.levels.size()) {
                out << detail::format_double(rep.levels[l].max_error);
                total += rep.levels[l].seconds;
            }
        }
        out << ',' << detail::format_double(rep.fitted_order) << ',' << detail::format_fixed(total, 6) << "\r\n";
    }
    return out.str();
}

/** @brief Log-log plot of max error against r, one polyline per report */
inline std::string convergence_svg(std::span<const ConvergenceReport> reports)
{
    constexpr double width = 640, height = 480, margin = 60;
    static constexpr std::array<const char*, 7> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                        "#9467bd", "#8c564b", "#17becf"};
    double lx0 = std::numeric_limits<double>::infinity(), lx1 = -lx0, ly0 = lx0, ly1 = -lx0;
    for (const auto& rep : reports) {
        for (const auto& l : rep.levels) {
            if (l.r > 0 && l.max_error > 0) {
                lx0 = std::min(lx0, std::log10(l.r));
                lx1 = std::max(lx1, std::log10(l.r));
                ly0 = std::min(ly0, std::log10(l.max_error));
                ly1 = std::max(ly1, std::log10(l.max_error));
            }
        }
    }
    if (!std::isfinite(lx0)) {
        lx0 = -1, lx1 = 0, ly0 = -1, ly1 = 0;
    }
    lx0 = std::floor(lx0), lx1 = std::ceil(lx1), ly0 = std::floor(ly0), ly1 = std::ceil(ly1);
    if (lx1 <= lx0) {
        lx1 = lx0 + 1;
    }
    if (ly1 <= ly0) {
        ly1 = ly0 + 1;
    }
    auto sx = [&](double lx) { return margin + (lx - lx0) / (lx1 - lx0) * (width - 2 * margin); };
    auto sy = [&](double ly) { return height - margin - (ly - ly0) / (ly1 - ly0) * (height - 2 * margin); };
    auto f2 = [](double v) { return detail::format_fixed(v, 2); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
        << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double d = lx0; d <= lx1 + 1e-9; d += 1) {
        out << "<text x=\"" << f2(sx(d)) << "\" y=\"" << f2(height - margin + 18)
            << "\" text-anchor=\"middle\">1e" << static_cast<int>(d) << "</text>\n";
    }
    for (double d = ly0; d <= ly1 + 1e-9; d += 1) {
        out << "<text x=\"" << f2(margin - 6) << "\" y=\"" << f2(sy(d) + 4) << "\" text-anchor=\"end\">1e"
            << static_cast<int>(d) << "</text>\n";
    }
    out << "<text x=\"" << f2(width / 2) << "\" y=\"" << f2(height - 16) << "\" text-anchor=\"middle\">r</text>\n";
    out << "<text x=\"16\" y=\"" << f2(height / 2) << "\" transform=\"rotate(-90 16 " << f2(height / 2)
        << ")\" text-anchor=\"middle\">max error</text>\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& rep = reports[i];
        const char* color = palette[i % palette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& l : rep.levels) {
            if (l.r > 0 && l.max_error > 0) {
                out << (first ? "" : " ") << f2(sx(std::log10(l.r))) << ',' << f2(sy(std::log10(l.max_error)));
                first = false;
            }
        }
        out << "\"/>\n";
        out << "<text x=\"" << f2(width - margin - 4) << "\" y=\"" << f2(margin + 16 + 16 * static_cast<double>(i))
            << "\" text-anchor=\"end\" fill=\"" << color << "\">" << to_string(rep.op) << " "
            << rep.surface << " (" << to_string(rep.domain) << ") p=" << f2(rep.fitted_order) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ltl
