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
#include "fd_oracle.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace ltl;

namespace
{
const std::array<AnalyticSurface, 4> kSurfaces{surfaces::f1(), surfaces::f2(), surfaces::f3(), surfaces::f4()};
}

TEST(Surfaces, ClosedFormPartialsMatchDifferences)
{
    for (const auto& s : kSurfaces) {
        EXPECT_LE(derivative_self_check(s, 500, 3), 1e-6) << s.id;
    }
}

TEST(Surfaces, ExactOperatorMatchesDivergenceOracle)
{
    for (const auto& s : kSurfaces) {
        EXPECT_LE(test::fd_oracle_gap(s, 1000, 17), 1e-5) << s.id;
    }
}

TEST(Surfaces, FlatQuadraticIsFour)
{
    EXPECT_DOUBLE_EQ(exact_lb_scalar(surfaces::flat(), fields::quadratic(), 0.3, 0.8), 4.0);
    EXPECT_EQ(exact_lb_coordinates(surfaces::flat(), 0.4, 0.4), Vec3::Zero());
}

TEST(Surfaces, SphereCapMeanCurvature)
{
    // radius 2: |2Hn| = 2 / R, pointing back toward the center
    const auto c = exact_lb_coordinates(surfaces::f1(), 0.5, 0.5);
    EXPECT_NEAR(c.norm(), 1.0, 1e-14);
    EXPECT_NEAR(c.z(), -1.0, 1e-14);
    const auto off = exact_lb_coordinates(surfaces::f1(), 0.1, 0.7);
    EXPECT_NEAR(off.norm(), 1.0, 1e-12);
    const Vec3 p = surfaces::f1().point(0.1, 0.7);
    EXPECT_NEAR(off.normalized().dot(-(p - Vec3(0.5, 0.5, 0)).normalized()), 1.0, 1e-12);
}

TEST(Surfaces, ParameterPointOutsideSquare)
{
    EXPECT_THROW(check_parameter_point(0.0, 0.5), std::domain_error);
    EXPECT_THROW(check_parameter_point(0.5, 1.2), std::domain_error);
    EXPECT_THROW(exact_lb_coordinates(surfaces::f2(), -0.1, 0.5), std::domain_error);
    EXPECT_NO_THROW(check_parameter_point(0.5, 0.5));
    EXPECT_THROW(exact_lb_scalar(surfaces::f1(), fields::coordinates(), 0.5, 0.5), std::invalid_argument);
}

TEST(Surfaces, LookupById)
{
    for (const char* id : {"F1", "F2", "F3", "F4", "flat"}) {
        ASSERT_TRUE(surfaces::by_id(id).has_value()) << id;
        EXPECT_EQ(surfaces::by_id(id)->id, id);
    }
    EXPECT_FALSE(surfaces::by_id("F5").has_value());
}
