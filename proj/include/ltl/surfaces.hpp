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

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltl
{

/** @brief First and second partial derivatives of a function of (x, y) */
struct Jet2 {
    double value{0}, dx{0}, dy{0}, dxx{0}, dxy{0}, dyy{0};
};

/** @brief Graph surface z = F(x, y) over the unit square, with closed-form partials */
struct AnalyticSurface {
    std::string id;
    std::function<Jet2(double, double)> jet;

    double height(double x, double y) const { return jet(x, y).value; }
    Vec3 point(double x, double y) const { return {x, y, jet(x, y).value}; }
};

namespace surfaces
{

inline AnalyticSurface flat()
{
    return {"flat", [](double, double) { return Jet2{}; }};
}

/** Cap of the radius-2 sphere centered at (0.5, 0.5, 0) */
inline AnalyticSurface f1()
{
    return {"F1", [](double x, double y) {
                const double a = x - 0.5, b = y - 0.5;
                const double s = 4.0 - a * a - b * b;
                const double rs = std::sqrt(s);
                const double s32 = s * rs;
                return Jet2{rs, -a / rs, -b / rs, -(s + a * a) / s32, -a * b / s32, -(s + b * b) / s32};
            }};
}

inline AnalyticSurface f2()
{
    return {"F2", [](double x, double y) {
                const double t = std::tanh(9.0 * x - 9.0 * y);
                const double sech2 = 1.0 - t * t;
                const double curv = -162.0 * t * sech2;
                return Jet2{t, 9.0 * sech2, -9.0 * sech2, curv, -curv, curv};
            }};
}

inline AnalyticSurface f3()
{
    return {"F3", [](double x, double y) {
                const double num = 1.25 + std::cos(5.4 * y);
                const double num_y = -5.4 * std::sin(5.4 * y);
                const double num_yy = -5.4 * 5.4 * std::cos(5.4 * y);
                const double u = 3.0 * x - 1.0;
                const double den = 6.0 + 6.0 * u * u;
                const double den_x = 36.0 * u;
                const double den_xx = 108.0;
                const double d2 = den * den;
                return Jet2{num / den,
                            -num * den_x / d2,
                            num_y / den,
                            num * (2.0 * den_x * den_x / (d2 * den) - den_xx / d2),
                            -num_y * den_x / d2,
                            num_yy / den};
            }};
}

inline AnalyticSurface f4()
{
    return {"F4", [](double x, double y) {
                constexpr double k = 81.0 / 16.0;
                const double a = x - 0.5, b = y - 0.5;
                const double e = std::exp(-k * (a * a + b * b));
                return Jet2{e,
                            -2.0 * k * a * e,
                            -2.0 * k * b * e,
                            (4.0 * k * k * a * a - 2.0 * k) * e,
                            4.0 * k * k * a * b * e,
                            (4.0 * k * k * b * b - 2.0 * k) * e};
            }};
}

/** F1..F4 or "flat" */
inline std::optional<AnalyticSurface> by_id(std::string_view id)
{
    if (id == "F1" || id == "f1") {
        return f1();
    }
    if (id == "F2" || id == "f2") {
        return f2();
    }
    if (id == "F3" || id == "f3") {
        return f3();
    }
    if (id == "F4" || id == "f4") {
        return f4();
    }
    if (id == "flat") {
        return flat();
    }
    return std::nullopt;
}

}  // namespace surfaces

/**
 * @brief Largest deviation between the closed-form partials and central
 * differences at @p samples seeded points of [0.05, 0.95]^2
 *
 * First derivatives difference F, second derivatives difference the
 * closed-form first derivatives. Deviations are relative to max(1, |value|).
 */
inline double derivative_self_check(const AnalyticSurface& s, int samples = 100, std::uint64_t seed = 1)
{
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return 0.05 + 0.9 * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    constexpr double h1 = 1e-5;
    constexpr double h2 = 1e-6;
    double worst = 0.0;
    auto track = [&](double closed, double numeric) {
        worst = std::max(worst, std::abs(closed - numeric) / std::max(1.0, std::abs(closed)));
    };
    for (int i = 0; i < samples; ++i) {
        const double x = uniform(), y = uniform();
        const Jet2 j = s.jet(x, y);
        const Jet2 xp = s.jet(x + h2, y), xm = s.jet(x - h2, y);
        const Jet2 yp = s.jet(x, y + h2), ym = s.jet(x, y - h2);
        track(j.dx, (s.height(x + h1, y) - s.height(x - h1, y)) / (2 * h1));
        track(j.dy, (s.height(x, y + h1) - s.height(x, y - h1)) / (2 * h1));
        track(j.dxx, (xp.dx - xm.dx) / (2 * h2));
        track(j.dxy, (yp.dx - ym.dx) / (2 * h2));
        track(j.dyy, (yp.dy - ym.dy) / (2 * h2));
    }
    return worst;
}

/** @brief What the discrete operator is applied to */
enum class TestMode {
    CoordinateFunctions,  ///< x, y, z of each vertex; exact value is the mean-curvature normal 2Hn
    Scalar,               ///< a scalar field given in the parameter coordinates
};

/** @brief Test field; for Scalar mode, its partials in the parameter (x, y) */
struct TestFunction {
    TestMode mode{TestMode::CoordinateFunctions};
    std::string name{"coords"};
    std::function<Jet2(double, double)> field;
};

namespace fields
{
inline TestFunction coordinates()
{
    return {};
}

inline TestFunction scalar(std::string name, std::function<Jet2(double, double)> f)
{
    return {TestMode::Scalar, std::move(name), std::move(f)};
}

/** x^2 + y^2 in the parameter plane */
inline TestFunction quadratic()
{
    return scalar("quadratic", [](double x, double y) { return Jet2{x * x + y * y, 2 * x, 2 * y, 2, 0, 2}; });
}

inline TestFunction sin_cos()
{
    return scalar("sincos", [](double x, double y) {
        const double sx = std::sin(x), cx = std::cos(x), sy = std::sin(y), cy = std::cos(y);
        return Jet2{sx * cy, cx * cy, -sx * sy, -sx * cy, -cx * sy, -sx * cy};
    });
}
}  // namespace fields

/**
 * @brief Exact Laplace-Beltrami operator of a parameter-space function f on
 * the graph surface of @p s
 *
 * Expands (1/sqrt g) d_i (g^ij sqrt g d_j f) for the metric
 * g = [[1 + Fx^2, Fx Fy], [Fx Fy, 1 + Fy^2]].
 */
inline double exact_lb_graph(const Jet2& surface, const Jet2& f)
{
    const double p = surface.dx, q = surface.dy;
    const double r = surface.dxx, s = surface.dxy, t = surface.dyy;
    const double g = 1.0 + p * p + q * q;
    const double w = std::sqrt(g);

    // sqrt(g) g^ij = a_ij / sqrt(g)
    const double a11 = 1.0 + q * q, a12 = -p * q, a22 = 1.0 + p * p;
    const double w_x = (p * r + q * s) / w;
    const double w_y = (p * s + q * t) / w;
    const double a11_x = 2.0 * q * s;
    const double a12_x = -(r * q + p * s);
    const double a12_y = -(s * q + p * t);
    const double a22_y = 2.0 * p * s;

    const double b1 = (a11_x + a12_y) / w - (a11 * w_x + a12 * w_y) / g;
    const double b2 = (a12_x + a22_y) / w - (a12 * w_x + a22 * w_y) / g;

    return (b1 * f.dx + b2 * f.dy) / w + (a11 * f.dxx + 2.0 * a12 * f.dxy + a22 * f.dyy) / g;
}

inline void check_parameter_point(double x, double y)
{
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) {
        throw std::domain_error("parameter point outside the open unit square");
    }
}

/** @brief Exact Laplacian of a Scalar-mode test function at (x, y) */
inline double exact_lb_scalar(const AnalyticSurface& s, const TestFunction& f, double x, double y)
{
    check_parameter_point(x, y);
    if (f.mode != TestMode::Scalar) {
        throw std::invalid_argument("exact_lb_scalar needs a scalar test function");
    }
    return exact_lb_graph(s.jet(x, y), f.field(x, y));
}

/** @brief Exact mean-curvature normal 2Hn: the operator applied to (x, y, F) */
inline Vec3 exact_lb_coordinates(const AnalyticSurface& s, double x, double y)
{
    check_parameter_point(x, y);
    const Jet2 j = s.jet(x, y);
    const Jet2 cx{x, 1, 0, 0, 0, 0};
    const Jet2 cy{y, 0, 1, 0, 0, 0};
    return {exact_lb_graph(j, cx), exact_lb_graph(j, cy), exact_lb_graph(j, j)};
}

}  // namespace ltl
