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

#include "moreau/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace moreau {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTimeOutOfDomain: return "TimeOutOfDomain";
    case ErrorCode::kOutsideReach: return "OutsideReach";
    case ErrorCode::kNotInSet: return "NotInSet";
    case ErrorCode::kInsideTarget: return "InsideTarget";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kAutonomousOnly: return "AutonomousOnly";
    case ErrorCode::kEmptyIntersection: return "EmptyIntersection";
    case ErrorCode::kGridTooCoarse: return "GridTooCoarse";
    case ErrorCode::kOutsideGraph: return "OutsideGraph";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kDivergentIntegral: return "DivergentIntegral";
    case ErrorCode::kNotInGraph: return "NotInGraph";
    case ErrorCode::kValueMismatch: return "ValueMismatch";
    case ErrorCode::kSignConditionFailed: return "SignConditionFailed";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "UnknownError";
}

namespace {

constexpr double kTimeTol = 1e-12;

Point Clamp(const Point& x, const Point& lo, const Point& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

bool InBox(const Point& x, const Point& lo, const Point& hi, double tol) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
  }
  return true;
}

Point UnitAxis(int dim, int axis, double sign) {
  Point e = Point::Zero(dim);
  e[axis] = sign;
  return e;
}

std::string Describe(double t, const Point& x) {
  std::ostringstream os;
  os << "(t=" << t << ", x=" << x.transpose() << ")";
  return os.str();
}

// Nearest point of box \ open ball. Fast paths cover everything except
// points whose box-clamp falls inside the ball and whose radial projection
// leaves the box; those go through the KKT active-set enumeration.
Point NearestBoxMinusBall(const Point& lo, const Point& hi, const Point& c, double rho,
                          const Point& x) {
  const Point clamped = Clamp(x, lo, hi);
  if ((clamped - c).norm() >= rho) return clamped;

  const int n = static_cast<int>(x.size());
  Point dir = x - c;
  if (dir.norm() == 0.0) dir = UnitAxis(n, 0, -1.0);
  const Point radial = c + rho * dir.normalized();
  if (InBox(radial, lo, hi, 0.0)) return radial;

  Point best = clamped;
  double best_dist = kInf;
  int combos = 1;
  for (int i = 0; i < n; ++i) combos *= 3;
  for (int code = 0; code < combos; ++code) {
    Point y = x;
    bool valid = true;
    int rem = code;
    std::vector<int> free_axes;
    for (int i = 0; i < n; ++i) {
      const int choice = rem % 3;
      rem /= 3;
      if (choice == 1) {
        if (!std::isfinite(lo[i])) valid = false;
        y[i] = lo[i];
      } else if (choice == 2) {
        if (!std::isfinite(hi[i])) valid = false;
        y[i] = hi[i];
      } else {
        free_axes.push_back(i);
      }
    }
    if (!valid) continue;
    for (int sphere = 0; sphere < 2; ++sphere) {
      std::vector<Point> candidates;
      if (sphere == 0) {
        candidates.push_back(y);
      } else {
        double r2 = rho * rho;
        for (int i = 0; i < n; ++i) {
          if (std::find(free_axes.begin(), free_axes.end(), i) == free_axes.end()) {
            r2 -= (y[i] - c[i]) * (y[i] - c[i]);
          }
        }
        if (r2 < -1e-14) continue;
        r2 = std::max(r2, 0.0);
        if (free_axes.empty()) {
          if (r2 > 1e-14) continue;
          candidates.push_back(y);
        } else {
          Point d = Point::Zero(n);
          for (int i : free_axes) d[i] = x[i] - c[i];
          if (d.norm() == 0.0) d[free_axes.front()] = 1.0;
          d.normalize();
          for (double sign : {1.0, -1.0}) {
            Point cand = y;
            for (int i : free_axes) cand[i] = c[i] + sign * std::sqrt(r2) * d[i];
            candidates.push_back(cand);
          }
        }
      }
      for (const Point& cand : candidates) {
        if (!InBox(cand, lo, hi, 1e-12)) continue;
        if ((cand - c).norm() < rho - 1e-12) continue;
        const double dist = (cand - x).norm();
        if (dist < best_dist) {
          best_dist = dist;
          best = cand;
        }
      }
    }
  }
  return best;
}

Point NearestPoint(const MovingSet& set, double t, const Point& x) {
  return std::visit(
      [&](const auto& shape) -> Point {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return Clamp(x, shape.lower_at(t), shape.upper_at(t));
        } else if constexpr (std::is_same_v<T, BoxMinusBallShape>) {
          return NearestBoxMinusBall(shape.box.lower_at(t), shape.box.upper_at(t),
                                     shape.center, shape.radius, x);
        } else {
          return shape.project(t, x);
        }
      },
      set.shape());
}

void BoxFaceNormals(const Point& lo, const Point& hi, const Point& x, double tol,
                    std::vector<Point>& out) {
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(lo[i]) && std::abs(x[i] - lo[i]) <= tol) out.push_back(UnitAxis(n, i, -1.0));
    if (std::isfinite(hi[i]) && std::abs(x[i] - hi[i]) <= tol) out.push_back(UnitAxis(n, i, 1.0));
  }
}

// Uniform point on the sphere S^{n-1} (n <= 3).
Point RandomUnit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Point u(n);
  do {
    for (int i = 0; i < n; ++i) u[i] = normal(rng);
  } while (u.norm() < 1e-12);
  return u.normalized();
}

// Deterministic, roughly uniform points on the sphere S^{n-1}.
std::vector<Point> SphereSamples(int n, int count) {
  std::vector<Point> out;
  if (n == 1) {
    out.push_back(MakePoint({-1.0}));
    out.push_back(MakePoint({1.0}));
  } else if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double a = 2.0 * std::numbers::pi * k / count;
      out.push_back(MakePoint({std::cos(a), std::sin(a)}));
    }
  } else {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / count;
      const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      out.push_back(MakePoint({rad * std::cos(golden * k), rad * std::sin(golden * k), z}));
    }
  }
  return out;
}

// Deterministic samples of the boundary of a (finite) box.
std::vector<Point> BoxBoundarySamples(const Point& lo, const Point& hi, int count) {
  const int n = static_cast<int>(lo.size());
  std::vector<Point> out;
  if (n == 1) {
    out.push_back(lo);
    if (hi[0] != lo[0]) out.push_back(hi);
    return out;
  }
  if (n == 2) {
    const double w = hi[0] - lo[0];
    const double h = hi[1] - lo[1];
    const double perimeter = 2.0 * (w + h);
    if (perimeter == 0.0) return {lo};
    for (int k = 0; k < count; ++k) {
      double s = perimeter * k / count;
      if (s < w) {
        out.push_back(MakePoint({lo[0] + s, lo[1]}));
      } else if ((s -= w) < h) {
        out.push_back(MakePoint({hi[0], lo[1] + s}));
      } else if ((s -= h) < w) {
        out.push_back(MakePoint({hi[0] - s, hi[1]}));
      } else {
        s -= w;
        out.push_back(MakePoint({lo[0], hi[1] - s}));
      }
    }
    return out;
  }
  const int per_face = std::max(4, count / 6);
  const int side = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(per_face))));
  for (int axis = 0; axis < 3; ++axis) {
    const int a = (axis + 1) % 3;
    const int b = (axis + 2) % 3;
    for (double fixed : {lo[axis], hi[axis]}) {
      for (int i = 0; i < side; ++i) {
        for (int j = 0; j < side; ++j) {
          Point p(3);
          p[axis] = fixed;
          p[a] = lo[a] + (hi[a] - lo[a]) * i / (side - 1);
          p[b] = lo[b] + (hi[b] - lo[b]) * j / (side - 1);
          out.push_back(p);
        }
      }
    }
  }
  return out;
}

Point RandomBoxBoundaryPoint(const Point& lo, const Point& hi, std::mt19937_64& rng) {
  const int n = static_cast<int>(lo.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> weights;
  for (int i = 0; i < n; ++i) {
    double area = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) area *= (hi[j] - lo[j]);
    }
    weights.push_back(area);
    weights.push_back(area);
  }
  double total = 0.0;
  for (double w : weights) total += w;
  int face = 0;
  if (total > 0.0) {
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    face = pick(rng);
  } else {
    face = std::uniform_int_distribution<int>(0, 2 * n - 1)(rng);
  }
  Point p(n);
  for (int j = 0; j < n; ++j) p[j] = lo[j] + (hi[j] - lo[j]) * unit(rng);
  const int axis = face / 2;
  p[axis] = (face % 2 == 0) ? lo[axis] : hi[axis];
  return p;
}

}  // namespace

Point BoxShape::lower_at(double t) const {
  Point out = lower;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (lower_rate[i] != 0.0) out[i] += t * lower_rate[i];
  }
  return out;
}

Point BoxShape::upper_at(double t) const {
  Point out = upper;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (upper_rate[i] != 0.0) out[i] += t * upper_rate[i];
  }
  return out;
}

bool BoxShape::is_static() const {
  return lower_rate.isZero(0.0) && upper_rate.isZero(0.0);
}

MovingSet::MovingSet(ShapeVariant shape, double prox_radius, double lipschitz, double t_max)
    : shape_(std::move(shape)), prox_radius_(prox_radius), lipschitz_(lipschitz), t_max_(t_max) {
  dimension_ = std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return s.dimension();
        } else if constexpr (std::is_same_v<T, BoxMinusBallShape>) {
          return s.box.dimension();
        } else {
          return static_cast<int>(s.bbox_lower.size());
        }
      },
      shape_);
  if (dimension_ < 1 || dimension_ > kMaxDim) {
    throw Error(ErrorCode::kInvalidArgument, "constraint dimension must be in 1..3");
  }
  if (!(prox_radius_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "prox radius must be positive");
  }
  if (!(lipschitz_ >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "set Lipschitz constant must be nonnegative");
  }
  if (!(t_max_ >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "time domain must be [0, t_max] with t_max >= 0");
  }
  const BoxShape* box = nullptr;
  if (const auto* b = std::get_if<BoxShape>(&shape_)) box = b;
  if (const auto* bb = std::get_if<BoxMinusBallShape>(&shape_)) {
    box = &bb->box;
    if (bb->center.size() != dimension_ || !(bb->radius > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "removed ball must match dimension with radius > 0");
    }
  }
  if (box != nullptr) {
    if (box->lower_rate.size() != dimension_ || box->upper.size() != dimension_ ||
        box->upper_rate.size() != dimension_) {
      throw Error(ErrorCode::kInvalidArgument, "box bound vectors must share one dimension");
    }
    if (!box->lower.allFinite() || !box->upper.allFinite() || !box->lower_rate.allFinite() ||
        !box->upper_rate.allFinite()) {
      throw Error(ErrorCode::kInvalidArgument, "constraint boxes must be bounded");
    }
    const double t_check = std::isfinite(t_max_) ? t_max_ : 0.0;
    for (double t : {0.0, t_check}) {
      const Point lo = box->lower_at(t);
      const Point hi = box->upper_at(t);
      for (int i = 0; i < dimension_; ++i) {
        if (lo[i] > hi[i] + 1e-12) {
          throw Error(ErrorCode::kInvalidArgument, "box is empty inside its time domain");
        }
      }
    }
  }
}

MovingSet MovingSet::Interval(double a0, double a1, double b0, double b1) {
  double t_max = kInf;
  if (a1 > b1) t_max = (b0 - a0) / (a1 - b1);
  BoxShape box{MakePoint({a0}), MakePoint({a1}), MakePoint({b0}), MakePoint({b1})};
  return MovingSet(box, kInf, std::max(std::abs(a1), std::abs(b1)), t_max);
}

MovingSet MovingSet::StaticBox(const Point& lower, const Point& upper) {
  BoxShape box{lower, Point::Zero(lower.size()), upper, Point::Zero(upper.size())};
  return MovingSet(box, kInf, 0.0, kInf);
}

MovingSet MovingSet::Box(BoxShape box, double t_max) {
  const double lc =
      std::max(box.lower_rate.cwiseAbs().maxCoeff(), box.upper_rate.cwiseAbs().maxCoeff());
  // Hausdorff speed of a moving box is the largest face speed.
  return MovingSet(std::move(box), kInf, lc, t_max);
}

MovingSet MovingSet::BoxMinusBall(const Point& lower, const Point& upper, const Point& center,
                                  double radius) {
  BoxShape box{lower, Point::Zero(lower.size()), upper, Point::Zero(upper.size())};
  return MovingSet(BoxMinusBallShape{box, center, radius}, radius, 0.0, kInf);
}

bool MovingSet::is_static() const {
  return std::visit(
      [](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return s.is_static();
        } else if constexpr (std::is_same_v<T, BoxMinusBallShape>) {
          return s.box.is_static();
        } else {
          return s.is_static;
        }
      },
      shape_);
}

void MovingSet::bounding_box(Point& lower, Point& upper) const {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, OracleShape>) {
          lower = s.bbox_lower;
          upper = s.bbox_upper;
        } else {
          const BoxShape* box;
          if constexpr (std::is_same_v<T, BoxShape>) {
            box = &s;
          } else {
            box = &s.box;
          }
          if (box->is_static()) {
            lower = box->lower;
            upper = box->upper;
            return;
          }
          if (!std::isfinite(t_max_)) {
            throw Error(ErrorCode::kInvalidArgument,
                        "moving box with unbounded time domain has no bounding box");
          }
          lower = box->lower_at(0.0).cwiseMin(box->lower_at(t_max_));
          upper = box->upper_at(0.0).cwiseMax(box->upper_at(t_max_));
        }
      },
      shape_);
}

double MovingSet::check_time(double t) const {
  const double slack = kTimeTol * std::max(1.0, std::isfinite(t_max_) ? t_max_ : 1.0);
  if (!(t >= -slack) || t > t_max_ + slack) {
    std::ostringstream os;
    os << "t=" << t << " outside [0, " << t_max_ << "]";
    throw Error(ErrorCode::kTimeOutOfDomain, os.str());
  }
  return std::clamp(t, 0.0, t_max_);
}

double distance(const MovingSet& set, double t, const Point& x) {
  t = set.check_time(t);
  if (const auto* oracle = std::get_if<OracleShape>(&set.shape())) return oracle->distance(t, x);
  return (NearestPoint(set, t, x) - x).norm();
}

bool contains(const MovingSet& set, double t, const Point& x, double tol) {
  return distance(set, t, x) <= tol;
}

Point project(const MovingSet& set, double t, const Point& x) {
  t = set.check_time(t);
  const Point nearest = NearestPoint(set, t, x);
  const double d = (nearest - x).norm();
  if (d >= set.prox_radius()) {
    throw Error(ErrorCode::kOutsideReach,
                "distance " + std::to_string(d) + " >= prox radius at " + Describe(t, x));
  }
  return nearest;
}

std::vector<Point> normal_generators(const MovingSet& set, double t, const Point& x, double tol) {
  t = set.check_time(t);
  if (distance(set, t, x) > tol) {
    throw Error(ErrorCode::kNotInSet, "point not in C(t) " + Describe(t, x));
  }
  std::vector<Point> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          BoxFaceNormals(s.lower_at(t), s.upper_at(t), x, tol, out);
        } else if constexpr (std::is_same_v<T, BoxMinusBallShape>) {
          BoxFaceNormals(s.box.lower_at(t), s.box.upper_at(t), x, tol, out);
          const Point to_center = s.center - x;
          if (std::abs(to_center.norm() - s.radius) <= tol) out.push_back(to_center.normalized());
        } else {
          for (const Point& n : s.normals(t, x, tol)) {
            if (n.norm() > 0.0) out.push_back(n.normalized());
          }
        }
      },
      set.shape());
  return out;
}

std::vector<Covector> graph_normal_generators(const MovingSet& set, double t, const Point& x,
                                              double tol) {
  t = set.check_time(t);
  const int n = set.dimension();
  std::vector<Covector> out;
  auto push = [&](double pt, const Point& px) {
    Covector p(n + 1);
    p[0] = pt;
    p.tail(n) = px;
    out.push_back(p);
  };
  const BoxShape* box = nullptr;
  if (const auto* b = std::get_if<BoxShape>(&set.shape())) box = b;
  if (const auto* bb = std::get_if<BoxMinusBallShape>(&set.shape())) {
    box = &bb->box;
    const Point to_center = bb->center - x;
    if (std::abs(to_center.norm() - bb->radius) <= tol) push(0.0, to_center.normalized());
  }
  if (box != nullptr) {
    if (distance(set, t, x) > tol) {
      throw Error(ErrorCode::kNotInSet, "point not in C(t) " + Describe(t, x));
    }
    const Point lo = box->lower_at(t);
    const Point hi = box->upper_at(t);
    for (int i = 0; i < n; ++i) {
      // lo_i(t) - x_i <= 0 and x_i - hi_i(t) <= 0 give gradients
      // (lo_i', -e_i) and (-hi_i', e_i).
      if (std::abs(x[i] - lo[i]) <= tol) push(box->lower_rate[i], UnitAxis(n, i, -1.0));
      if (std::abs(x[i] - hi[i]) <= tol) push(-box->upper_rate[i], UnitAxis(n, i, 1.0));
    }
  } else {
    // Oracle shapes: outward normal speed from one-sided time differences of
    // the distance oracle.
    const auto& oracle = std::get<OracleShape>(set.shape());
    const double eps = 1e-6;
    for (const Point& nx : normal_generators(set, t, x, tol)) {
      double pt = 0.0;
      if (!oracle.is_static) {
        const double ahead = t + eps <= set.t_max() ? oracle.distance(t + eps, x) : 0.0;
        const double behind = t - eps >= 0.0 ? oracle.distance(t - eps, x) : 0.0;
        pt = (ahead - behind) / eps;
      }
      push(pt, nx);
    }
  }
  if (!set.is_static() && t <= tol) {
    push(-1.0, Point::Zero(n));
  }
  return out;
}

std::vector<Point> sample_boundary(const MovingSet& set, double t, int count) {
  t = set.check_time(t);
  const int n = set.dimension();
  std::vector<Point> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          out = BoxBoundarySamples(s.lower_at(t), s.upper_at(t), count);
        } else if constexpr (std::is_same_v<T, BoxMinusBallShape>) {
          const Point lo = s.box.lower_at(t);
          const Point hi = s.box.upper_at(t);
          for (const Point& p : BoxBoundarySamples(lo, hi, count / 2)) {
            if ((p - s.center).norm() >= s.radius) out.push_back(p);
          }
          for (const Point& u : SphereSamples(n, std::max(2, count / 2))) {
            const Point p = s.center + s.radius * u;
            if (InBox(p, lo, hi, 0.0)) out.push_back(p);
          }
        } else {
          // Project a regular grid of the bounding box onto C(t).
          const int side =
              std::max(2, static_cast<int>(std::pow(static_cast<double>(count), 1.0 / n)));
          int total = 1;
          for (int i = 0; i < n; ++i) total *= side;
          for (int k = 0; k < total; ++k) {
            Point g(n);
            int rem = k;
            for (int i = 0; i < n; ++i) {
              const int idx = rem % side;
              rem /= side;
              g[i] = s.bbox_lower[i] + (s.bbox_upper[i] - s.bbox_lower[i]) * idx / (side - 1);
            }
            const double d = s.distance(t, g);
            if (d > 0.0 && d < set.prox_radius()) out.push_back(s.project(t, g));
          }
        }
      },
      set.shape());
  return out;
}

Point random_boundary_point(const MovingSet& set, double t, std::mt19937_64& rng) {
  t = set.check_time(t);
  const int n = set.dimension();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::optional<Point> p;
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, BoxShape>) {
            p = RandomBoxBoundaryPoint(s.lower_at(t), s.upper_at(t), rng);
          } else if constexpr (std::is_same_v<T, BoxMinusBallShape>) {
            const Point lo = s.box.lower_at(t);
            const Point hi = s.box.upper_at(t);
            // Pick the sphere or the box boundary in proportion to measure.
            double box_measure = 0.0;
            for (int i = 0; i < n; ++i) {
              double area = 2.0;
              for (int j = 0; j < n; ++j) {
                if (j != i) area *= (hi[j] - lo[j]);
              }
              box_measure += area;
            }
            const double sphere_measure =
                n == 1 ? 2.0 : (n == 2 ? 2.0 * std::numbers::pi * s.radius
                                       : 4.0 * std::numbers::pi * s.radius * s.radius);
            std::bernoulli_distribution on_sphere(sphere_measure / (sphere_measure + box_measure));
            Point cand = on_sphere(rng) ? Point(s.center + s.radius * RandomUnit(n, rng))
                                        : RandomBoxBoundaryPoint(lo, hi, rng);
            if (InBox(cand, lo, hi, 0.0) && (cand - s.center).norm() >= s.radius * (1 - 1e-15)) {
              p = cand;
            }
          } else {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            Point g(n);
            for (int i = 0; i < n; ++i) {
              g[i] = s.bbox_lower[i] + (s.bbox_upper[i] - s.bbox_lower[i]) * unit(rng);
            }
            const double d = s.distance(t, g);
            if (d > 0.0 && d < set.prox_radius()) p = s.project(t, g);
          }
        },
        set.shape());
    if (p) return *p;
  }
  throw Error(ErrorCode::kInvalidArgument, "could not sample the boundary of C(t)");
}

Point random_point_in(const MovingSet& set, double t, std::mt19937_64& rng) {
  t = set.check_time(t);
  const int n = set.dimension();
  Point lo, hi;
  if (const auto* b = std::get_if<BoxShape>(&set.shape())) {
    lo = b->lower_at(t);
    hi = b->upper_at(t);
  } else if (const auto* bb = std::get_if<BoxMinusBallShape>(&set.shape())) {
    lo = bb->box.lower_at(t);
    hi = bb->box.upper_at(t);
  } else {
    set.bounding_box(lo, hi);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Point p(n);
    for (int i = 0; i < n; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    if (distance(set, t, p) == 0.0) return p;
  }
  throw Error(ErrorCode::kInvalidArgument, "could not sample a point of C(t)");
}

double hausdorff_distance(const MovingSet& set, double t, double s, int boundary_samples) {
  double out = 0.0;
  for (const Point& a : sample_boundary(set, t, boundary_samples)) {
    out = std::max(out, distance(set, s, a));
  }
  for (const Point& b : sample_boundary(set, s, boundary_samples)) {
    out = std::max(out, distance(set, t, b));
  }
  return out;
}

ProxRegularityReport check_prox_regularity(const MovingSet& set, double r, int n_samples,
                                           std::uint64_t seed) {
  if (n_samples <= 0) throw Error(ErrorCode::kInvalidArgument, "n_samples must be positive");
  std::mt19937_64 rng(seed);
  const double t_hi = std::isfinite(set.t_max()) ? set.t_max() : 1.0;
  std::uniform_real_distribution<double> time(0.0, t_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProxRegularityReport report;
  for (int k = 0; k < n_samples; ++k) {
    const double t = set.is_static() ? 0.0 : time(rng);
    const Point x = random_boundary_point(set, t, rng);
    const std::vector<Point> gens = normal_generators(set, t, x);
    if (gens.empty()) continue;
    Point zeta = Point::Zero(set.dimension());
    for (const Point& g : gens) zeta += unit(rng) * g;
    if (zeta.norm() == 0.0) zeta = gens.front();
    const Point y = unit(rng) < 0.5 ? random_point_in(set, t, rng) : random_boundary_point(set, t, rng);
    const double gap2 = (y - x).squaredNorm();
    const double lhs = zeta.dot(y - x);
    const double rhs = zeta.norm() * gap2 / (2.0 * r);
    double margin = lhs - rhs;
    // Equality holds along the whole removed sphere at r = radius; margins
    // below the rounding error of the two terms are reported as zero.
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() *
                            (std::abs(lhs) + std::abs(rhs) + zeta.norm() * std::sqrt(gap2));
    if (std::abs(margin) <= rounding) margin = 0.0;
    ++report.samples;
    if (margin > report.worst_margin) {
      report.worst_margin = margin;
      report.witness = ProxWitness{t, x, y, zeta};
    }
  }
  report.pass = report.worst_margin <= 0.0;
  if (report.pass) report.witness.reset();
  return report;
}

double estimate_set_lipschitz(const MovingSet& set, int n_time_samples, int boundary_samples) {
  if (n_time_samples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two time samples");
  }
  const double t_hi = std::isfinite(set.t_max()) ? set.t_max() : 1.0;
  double out = 0.0;
  double prev = 0.0;
  for (int k = 1; k < n_time_samples; ++k) {
    const double t = t_hi * k / (n_time_samples - 1);
    out = std::max(out, hausdorff_distance(set, prev, t, boundary_samples) / (t - prev));
    prev = t;
  }
  return out;
}

Point project_onto_cone(const Point& v, const std::vector<Point>& generators) {
  const int n = static_cast<int>(v.size());
  const int k = static_cast<int>(generators.size());
  Point best = Point::Zero(n);
  double best_residual = v.squaredNorm();
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> active;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) active.push_back(i);
    }
    if (static_cast<int>(active.size()) > n) continue;
    Eigen::MatrixXd a(n, active.size());
    for (std::size_t j = 0; j < active.size(); ++j) a.col(j) = generators[active[j]];
    const Eigen::VectorXd c = a.completeOrthogonalDecomposition().solve(v);
    if ((c.array() < -1e-14).any()) continue;
    const Point candidate = a * c;
    const double residual = (v - candidate).squaredNorm();
    if (residual < best_residual) {
      best_residual = residual;
      best = candidate;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Static sets

StaticSet::StaticSet(BoxShape box) : shape_(std::move(box)) {
  const auto& b = std::get<BoxShape>(shape_);
  int finite_bounds = 0;
  for (int i = 0; i < b.dimension(); ++i) {
    finite_bounds += std::isfinite(b.lower[i]) ? 1 : 0;
    finite_bounds += std::isfinite(b.upper[i]) ? 1 : 0;
  }
  // Half-spaces and the whole space have flat (or no) boundary; boxes with
  // corners admit no internal sphere at the corners.
  internal_sphere_radius_ = finite_bounds <= 1 ? kInf : 0.0;
}

StaticSet::StaticSet(BallShape ball) : shape_(std::move(ball)) {
  internal_sphere_radius_ = std::get<BallShape>(shape_).radius;
}

StaticSet StaticSet::HalfSpace(int dim, int axis, double value, bool upper_side) {
  Point lo = Point::Constant(dim, -kInf);
  Point hi = Point::Constant(dim, kInf);
  if (upper_side) {
    lo[axis] = value;
  } else {
    hi[axis] = value;
  }
  return StaticSet(BoxShape{lo, Point::Zero(dim), hi, Point::Zero(dim)});
}

StaticSet StaticSet::WholeSpace(int dim) {
  return StaticSet(BoxShape{Point::Constant(dim, -kInf), Point::Zero(dim),
                            Point::Constant(dim, kInf), Point::Zero(dim)});
}

int StaticSet::dimension() const {
  if (const auto* b = std::get_if<BoxShape>(&shape_)) return b->dimension();
  return static_cast<int>(std::get<BallShape>(shape_).center.size());
}

Point project(const StaticSet& set, const Point& x) {
  if (const auto* b = std::get_if<BoxShape>(&set.shape())) return Clamp(x, b->lower, b->upper);
  const auto& ball = std::get<BallShape>(set.shape());
  const Point d = x - ball.center;
  if (d.norm() <= ball.radius) return x;
  return ball.center + ball.radius * d.normalized();
}

double distance(const StaticSet& set, const Point& x) { return (project(set, x) - x).norm(); }

double signed_distance(const StaticSet& set, const Point& x) {
  if (const auto* ball = std::get_if<BallShape>(&set.shape())) {
    return (x - ball->center).norm() - ball->radius;
  }
  const auto& b = std::get<BoxShape>(set.shape());
  const double d = distance(set, x);
  if (d > 0.0) return d;
  double depth = kInf;
  for (int i = 0; i < b.dimension(); ++i) {
    if (std::isfinite(b.lower[i])) depth = std::min(depth, x[i] - b.lower[i]);
    if (std::isfinite(b.upper[i])) depth = std::min(depth, b.upper[i] - x[i]);
  }
  return -depth;
}

bool contains(const StaticSet& set, const Point& x, double tol) { return distance(set, x) <= tol; }

bool interior_contains(const StaticSet& set, const Point& x, double tol) {
  return signed_distance(set, x) < -tol;
}

std::vector<Point> outward_normals(const StaticSet& set, const Point& x, double tol) {
  std::vector<Point> out;
  if (const auto* b = std::get_if<BoxShape>(&set.shape())) {
    BoxFaceNormals(b->lower, b->upper, x, tol, out);
  } else {
    const auto& ball = std::get<BallShape>(set.shape());
    const Point d = x - ball.center;
    if (std::abs(d.norm() - ball.radius) <= tol) out.push_back(d.normalized());
  }
  return out;
}

std::vector<Point> target_superdifferential(const TargetSet& target, const Point& x, double tol) {
  if (interior_contains(target, x, tol)) {
    std::ostringstream os;
    os << "x=" << x.transpose() << " lies in the interior of the target";
    throw Error(ErrorCode::kInsideTarget, os.str());
  }
  const double d = distance(target, x);
  if (d > tol) return {(x - project(target, x)) / d};
  return outward_normals(target, x, tol);
}

}  // namespace moreau
