// Copyright 2026 The Moreau Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOREAU_CORE_HPP_
#define MOREAU_CORE_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace moreau {

// State vectors live in R^n with n <= 3; augmented covectors (t, x, lambda)
// need at most 5 entries. Fixed maximum sizes keep everything on the stack.
inline constexpr int kMaxDim = 3;
inline constexpr int kMaxAugmentedDim = kMaxDim + 2;

template <typename Scalar>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
template <typename Scalar>
using CovectorT =
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAugmentedDim, 1>;

using Point = PointT<double>;
using Covector = CovectorT<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Default tolerances for analytic shapes in double precision.
inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kConeAngleTol = 1e-6;

enum class ErrorCode : std::uint8_t {
  kTimeOutOfDomain,
  kOutsideReach,
  kNotInSet,
  kInsideTarget,
  kStepTooLarge,
  kAutonomousOnly,
  kEmptyIntersection,
  kGridTooCoarse,
  kOutsideGraph,
  kBudgetExceeded,
  kDivergentIntegral,
  kNotInGraph,
  kValueMismatch,
  kSignConditionFailed,
  kDomainError,
  kInvalidArgument,
  kConfigError,
};

const char* ToString(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ToString(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Point MakePoint(std::initializer_list<double> values) {
  Point p(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) p[i++] = v;
  return p;
}

inline Covector MakeCovector(std::initializer_list<double> values) {
  Covector p(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) p[i++] = v;
  return p;
}

}  // namespace moreau

#endif  // MOREAU_CORE_HPP_
