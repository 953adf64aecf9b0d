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

#include "moreau/control.hpp"

#include <cmath>
#include <numbers>

namespace moreau {

ControlField::ControlField(Kind kind, const Matrix& drift, double bound, double lipschitz)
    : kind_(kind), drift_(drift), bound_(bound), lipschitz_(lipschitz) {
  if (drift_.rows() < 1 || drift_.rows() > kMaxDim || drift_.rows() != drift_.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "control drift must be a square matrix of size 1..3");
  }
  if (!(bound_ > 0.0)) throw Error(ErrorCode::kInvalidArgument, "control bound M must be positive");
  if (!(lipschitz_ >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "control Lipschitz constant must be nonnegative");
  }
}

ControlField ControlField::Polytope(const Matrix& drift, std::vector<Point> offsets, double bound,
                                    double lipschitz) {
  ControlField field(Kind::kPolytope, drift, bound, lipschitz);
  if (offsets.empty()) throw Error(ErrorCode::kInvalidArgument, "polytope needs a vertex");
  for (const Point& v : offsets) {
    if (v.size() != field.dimension()) {
      throw Error(ErrorCode::kInvalidArgument, "polytope vertex has the wrong dimension");
    }
  }
  field.offsets_ = std::move(offsets);
  return field;
}

ControlField ControlField::Ball(const Matrix& drift, const Point& center, double radius,
                                double bound, double lipschitz) {
  ControlField field(Kind::kBall, drift, bound, lipschitz);
  if (center.size() != field.dimension() || !(radius >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ball control needs a center of matching dimension");
  }
  field.center_ = center;
  field.radius_ = radius;
  return field;
}

std::vector<Point> ControlField::extreme_points(double t, const Point& x, int ball_samples) const {
  const Point base = select(t, x, Point::Zero(dimension()));
  std::vector<Point> out;
  if (kind_ == Kind::kPolytope) {
    out.reserve(offsets_.size());
    for (const Point& v : offsets_) out.push_back(base + v);
    return out;
  }
  const int n = dimension();
  if (n == 1 || radius_ == 0.0) {
    out.push_back(base + center_ - Point::Constant(n, radius_));
    if (radius_ > 0.0) out.push_back(base + center_ + Point::Constant(n, radius_));
    return out;
  }
  if (n == 2) {
    for (int k = 0; k < ball_samples; ++k) {
      const double a = 2.0 * std::numbers::pi * k / ball_samples;
      out.push_back(base + center_ + radius_ * MakePoint({std::cos(a), std::sin(a)}));
    }
    return out;
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < ball_samples; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / ball_samples;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.push_back(base + center_ +
                  radius_ * MakePoint({rad * std::cos(golden * k), rad * std::sin(golden * k), z}));
  }
  return out;
}

Point ControlField::select(double, const Point& x, const Point& u) const {
  if (x.size() != dimension() || u.size() != dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "control evaluation dimension mismatch");
  }
  return drift_ * x + u;
}

double ControlField::min_dot(double t, const Point& x, const Point& p) const {
  return argmin_dot(t, x, p).dot(p);
}

double ControlField::max_dot(double t, const Point& x, const Point& p) const {
  return -min_dot(t, x, -p);
}

Point ControlField::argmin_dot(double t, const Point& x, const Point& p) const {
  const Point base = select(t, x, Point::Zero(dimension()));
  if (kind_ == Kind::kBall) {
    const double norm = p.norm();
    if (norm == 0.0) return base + center_;
    return base + center_ - radius_ * p / norm;
  }
  const Point* best = &offsets_.front();
  for (const Point& v : offsets_) {
    if (v.dot(p) < best->dot(p)) best = &v;
  }
  return base + *best;
}

}  // namespace moreau
