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

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ltl
{

using Index = std::int64_t;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/** @brief Reasons a per-vertex evaluation can fail */
enum class FailureKind {
    DegenerateConfiguration,
    ZeroDenominator,
    DegenerateAngle,
    DegenerateFace,
    ZeroLengthEdge,
    BoundaryEdge,
    RankDeficientFit,
    MissingValue,
};

/** @brief Stable, CLI-facing name of a failure kind */
inline std::string_view to_string(FailureKind kind)
{
    switch (kind) {
        case FailureKind::DegenerateConfiguration:
            return "degenerate-configuration";
        case FailureKind::ZeroDenominator:
            return "zero-denominator";
        case FailureKind::DegenerateAngle:
            return "degenerate-angle";
        case FailureKind::DegenerateFace:
            return "degenerate-face";
        case FailureKind::ZeroLengthEdge:
            return "zero-length-edge";
        case FailureKind::BoundaryEdge:
            return "boundary-edge";
        case FailureKind::RankDeficientFit:
            return "rank-deficient-fit";
        case FailureKind::MissingValue:
            return "missing-value";
    }
    return "unknown";
}

/** @brief Malformed input mesh, file, or query */
class MeshError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/** @brief A numerical evaluation that failed at one vertex */
class EvaluationError : public std::runtime_error
{
public:
    EvaluationError(FailureKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_{kind}
    {
    }

    FailureKind kind() const noexcept { return kind_; }

private:
    FailureKind kind_;
};

}  // namespace ltl
