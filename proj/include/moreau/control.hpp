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

#ifndef MOREAU_CONTROL_HPP_
#define MOREAU_CONTROL_HPP_

#include <vector>

#include "moreau/core.hpp"

namespace moreau {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim,
                             kMaxDim>;

/// Convex compact velocity set G(t, x) = A x + K, where K is either the
/// convex hull of a finite offset list or a closed ball. The affine drift
/// covers families such as x + [-1, 1].
class ControlField {
 public:
  enum class Kind { kPolytope, kBall };

  static ControlField Polytope(const Matrix& drift, std::vector<Point> offsets, double bound,
                               double lipschitz);
  static ControlField Ball(const Matrix& drift, const Point& center, double radius, double bound,
                           double lipschitz);

  Kind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(drift_.rows()); }
  double bound() const { return bound_; }
  double lipschitz() const { return lipschitz_; }
  const Matrix& drift() const { return drift_; }
  const std::vector<Point>& offsets() const { return offsets_; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }

  /// Vertices of G(t, x) for polytopes, `ball_samples` equispaced boundary
  /// points for balls.
  std::vector<Point> extreme_points(double t, const Point& x, int ball_samples = 16) const;

  /// Velocity A x + u for a control offset u.
  Point select(double t, const Point& x, const Point& u) const;

  double min_dot(double t, const Point& x, const Point& p) const;
  double max_dot(double t, const Point& x, const Point& p) const;
  Point argmin_dot(double t, const Point& x, const Point& p) const;

 private:
  ControlField(Kind kind, const Matrix& drift, double bound, double lipschitz);

  Kind kind_;
  Matrix drift_;
  std::vector<Point> offsets_;
  Point center_;
  double radius_ = 0.0;
  double bound_;
  double lipschitz_;
};

}  // namespace moreau

#endif  // MOREAU_CONTROL_HPP_
