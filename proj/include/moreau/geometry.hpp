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

#ifndef MOREAU_GEOMETRY_HPP_
#define MOREAU_GEOMETRY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "moreau/core.hpp"

namespace moreau {

/// Axis-aligned box whose bounds move affinely in time:
/// lower(t) = lower + t * lower_rate, upper(t) = upper + t * upper_rate.
/// Infinite bounds are allowed for static regions (targets, invariance
/// candidates) but not for constraint sets.
struct BoxShape {
  Point lower;
  Point lower_rate;
  Point upper;
  Point upper_rate;

  int dimension() const { return static_cast<int>(lower.size()); }
  Point lower_at(double t) const;
  Point upper_at(double t) const;
  bool is_static() const;
};

/// A box with an open ball removed. The removed ball is what makes the set
/// non-convex; its radius is the prox-regularity constant of the result.
struct BoxMinusBallShape {
  BoxShape box;
  Point center;
  double radius = 1.0;
};

/// Escape hatch for sets that are not one of the primitives. Oracles must be
/// pure functions of their arguments.
struct OracleShape {
  std::function<double(double, const Point&)> distance;
  std::function<Point(double, const Point&)> project;
  std::function<std::vector<Point>(double, const Point&, double)> normals;
  Point bbox_lower;
  Point bbox_upper;
  bool is_static = false;
};

using ShapeVariant = std::variant<BoxShape, BoxMinusBallShape, OracleShape>;

/// Time-indexed constraint C(t), t in [0, t_max], with its prox-regularity
/// radius r and Hausdorff-Lipschitz constant L_C.
class MovingSet {
 public:
  MovingSet(ShapeVariant shape, double prox_radius, double lipschitz, double t_max);

  /// C(t) = [a0 + a1 t, b0 + b1 t]. The time domain ends where the interval
  /// degenerates, unless the endpoints never cross (then t_max = +inf).
  static MovingSet Interval(double a0, double a1, double b0, double b1);
  static MovingSet StaticBox(const Point& lower, const Point& upper);
  static MovingSet Box(BoxShape box, double t_max);
  static MovingSet BoxMinusBall(const Point& lower, const Point& upper,
                                const Point& center, double radius);

  int dimension() const { return dimension_; }
  double prox_radius() const { return prox_radius_; }
  double lipschitz() const { return lipschitz_; }
  double t_max() const { return t_max_; }
  bool is_static() const;
  const ShapeVariant& shape() const { return shape_; }

  /// Bounding box of the union of C(t) over the time domain.
  void bounding_box(Point& lower, Point& upper) const;

  /// Throws TimeOutOfDomain when t is outside [0, t_max]; returns t clamped
  /// to the domain (absorbs rounding in t0 + k h).
  double check_time(double t) const;

 private:
  ShapeVariant shape_;
  double prox_radius_;
  double lipschitz_;
  double t_max_;
  int dimension_;
};

double distance(const MovingSet& set, double t, const Point& x);
bool contains(const MovingSet& set, double t, const Point& x, double tol = kMembershipTol);

/// Unique nearest point of C(t). Throws OutsideReach when distance >= r.
Point project(const MovingSet& set, double t, const Point& x);

/// Unit generators of the proximal normal cone of C(t) at x. Empty for
/// interior points. Throws NotInSet when distance(set, t, x) > tol.
std::vector<Point> normal_generators(const MovingSet& set, double t, const Point& x,
                                     double tol = kMembershipTol);

/// Generators (p_t, p_x) of the proximal normal cone of graph(C) at (t, x):
/// each active face contributes (minus its outward normal speed, n), and the
/// initial time slice of a time-dependent set contributes (-1, 0).
std::vector<Covector> graph_normal_generators(const MovingSet& set, double t,
                                              const Point& x,
                                              double tol = kMembershipTol);

/// Deterministic boundary samples of C(t) (Hausdorff estimates, invariance
/// probes). `count` is a budget, exact for 2D boxes.
std::vector<Point> sample_boundary(const MovingSet& set, double t, int count);

Point random_boundary_point(const MovingSet& set, double t, std::mt19937_64& rng);
Point random_point_in(const MovingSet& set, double t, std::mt19937_64& rng);

/// Hausdorff distance between C(t) and C(s) from boundary samples.
double hausdorff_distance(const MovingSet& set, double t, double s,
                          int boundary_samples = 720);

struct ProxWitness {
  double t = 0.0;
  Point x;
  Point y;
  Point zeta;
};

struct ProxRegularityReport {
  bool pass = true;
  double worst_margin = -kInf;
  int samples = 0;
  std::optional<ProxWitness> witness;
};

/// Monte-Carlo test of  zeta.(y - x) <= |zeta| |y - x|^2 / (2r)  over sampled
/// times, boundary points x, cone elements zeta and points y of C(t).
ProxRegularityReport check_prox_regularity(const MovingSet& set, double r,
                                           int n_samples, std::uint64_t seed);

/// Max over consecutive sample times of d_H(C(t), C(s)) / |t - s|.
double estimate_set_lipschitz(const MovingSet& set, int n_time_samples,
                              int boundary_samples = 720);

/// Euclidean projection of v onto cone{generators} (nonnegative least
/// squares by active-set enumeration; generator lists are short).
Point project_onto_cone(const Point& v, const std::vector<Point>& generators);

struct BallShape {
  Point center;
  double radius = 1.0;
};

/// Time-independent closed set: targets S and invariance candidates K.
class StaticSet {
 public:
  explicit StaticSet(BoxShape box);
  explicit StaticSet(BallShape ball);

  /// {x : x_axis >= value} or {x : x_axis <= value} in R^dim.
  static StaticSet HalfSpace(int dim, int axis, double value, bool upper_side);
  static StaticSet WholeSpace(int dim);

  int dimension() const;
  double internal_sphere_radius() const { return internal_sphere_radius_; }
  bool satisfies_internal_sphere() const { return internal_sphere_radius_ > 0.0; }
  const std::variant<BoxShape, BallShape>& shape() const { return shape_; }

 private:
  std::variant<BoxShape, BallShape> shape_;
  double internal_sphere_radius_;
};

using TargetSet = StaticSet;

double distance(const StaticSet& set, const Point& x);
/// Negative inside, distance to the complement there.
double signed_distance(const StaticSet& set, const Point& x);
Point project(const StaticSet& set, const Point& x);
bool contains(const StaticSet& set, const Point& x, double tol = kMembershipTol);
bool interior_contains(const StaticSet& set, const Point& x, double tol = kMembershipTol);

/// Outward unit normals of a static set at a boundary point x.
std::vector<Point> outward_normals(const StaticSet& set, const Point& x,
                                   double tol = kMembershipTol);

/// Proximal superdifferential of d_S at x: the gradient off S, the outward
/// unit normals on the boundary. Throws InsideTarget for interior points.
std::vector<Point> target_superdifferential(const TargetSet& target, const Point& x,
                                            double tol = kMembershipTol);

}  // namespace moreau

#endif  // MOREAU_GEOMETRY_HPP_
