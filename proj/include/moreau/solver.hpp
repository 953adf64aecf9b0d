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

#ifndef MOREAU_SOLVER_HPP_
#define MOREAU_SOLVER_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "moreau/control.hpp"
#include "moreau/dynamics.hpp"
#include "moreau/geometry.hpp"

namespace moreau {

enum class NodeStatus : std::uint8_t { kTarget, kReached, kUnreached, kOutsideC };

const char* ToString(NodeStatus status);

struct GridParams {
  double dx = 5e-3;
  double dt = 2.5e-3;
  // Boundary samples per ball-shaped control set.
  int control_samples = 16;
  double vi_tol = 1e-9;
  long max_iterations = 1000000;
  int workers = 1;
  // Final time of the backward recursion; defaults to t_max of the set.
  std::optional<double> t_end;
};

/// Minimum-time values on a node grid covering graph(C). Autonomous problems
/// store a single slice.
struct ValueGrid {
  int dimension = 1;
  Point lower;
  Point spacing;
  std::array<int, kMaxDim> counts{1, 1, 1};
  std::vector<double> times;
  bool autonomous = false;
  std::vector<double> values;
  std::vector<NodeStatus> status;
  long iterations = 0;
  double final_change = 0.0;
  GridParams params;
  std::shared_ptr<const MovingSet> set;

  std::size_t nodes_per_slice() const;
  std::size_t slices() const { return times.size(); }
  Point node(std::size_t flat) const;
  double value(std::size_t slice, std::size_t flat) const {
    return values[slice * nodes_per_slice() + flat];
  }
};

/// Backward semi-Lagrangian recursion (time-dependent sets) or Jacobi value
/// iteration (static sets) for the minimum time to reach the target.
ValueGrid solve_mintime(const MovingSet& set, const ControlField& field, const TargetSet& target,
                        const GridParams& params);

/// Multilinear interpolation over finite stencil values.
double mintime_at(const ValueGrid& grid, double t0, const Point& x0);

/// Picks the control minimizing the one-step Bellman cost on the grid.
Policy greedy_policy(const ValueGrid& grid, const ControlField& field, const TargetSet& target);

void write_grid_csv(std::ostream& out, const ValueGrid& grid);

/// Grid parameters, problem constants and scheme tolerances of a solve.
nlohmann::json grid_manifest(const ValueGrid& grid, const ControlField& field, double rho);

struct OracleOptions {
  int segments = 6;
  double horizon = 5.0;
  double h = 5e-4;
  // Segment duration; 0 means horizon / segments.
  double segment_duration = 0.0;
  long step_budget = 20000000;
  int refine_rounds = 12;
  int ball_samples = 8;
};

struct OracleResult {
  double time = kInf;
  std::vector<int> controls;
  std::vector<double> durations;
  long steps = 0;
};

/// Exhaustive search over piecewise-constant vertex controls; an upper bound
/// on the minimum time.
OracleResult oracle_mintime(const MovingSet& set, const ControlField& field,
                            const TargetSet& target, double t0, const Point& x0,
                            const OracleOptions& options = {});

/// Nondecreasing scalar function mu of the target distance.
struct Modulus {
  enum class Kind { kConstant, kPower, kTable };

  Kind kind = Kind::kConstant;
  double scale = 1.0;
  double exponent = 1.0;
  std::vector<std::pair<double, double>> table;

  static Modulus Constant(double c);
  /// c * r^a.
  static Modulus Power(double c, double a);
  /// Piecewise linear through (r, mu) pairs, constant outside.
  static Modulus Table(std::vector<std::pair<double, double>> points);

  double operator()(double r) const;
  nlohmann::json to_json() const;
};

/// Integral of 2 / mu over [0, e^{K T_bound} dx + K' sqrt(dt)].
double continuity_modulus_bound(const Modulus& mu, double K, double T_bound, double K_prime,
                                double dx, double dt);

/// 2 * integral of 1 / mu over [0, dS0].
double reach_time_upper_bound(const Modulus& mu, double dS0);

/// n L_G + 1 / r.
double default_modulus_K(const MovingSet& set, const ControlField& field);

struct PetrovOptions {
  Modulus mu = Modulus::Constant(0.5);
  double delta = 0.05;
  // Normal truncation; 0 means L_C + M.
  double L = 0.0;
  int samples = 100;
  int neighbors = 24;
  std::uint64_t seed = 1;
  std::vector<std::pair<double, Point>> probes;
  int ball_samples = 16;
};

struct PetrovPoint {
  double t = 0.0;
  Point x;
  double d_S = 0.0;
  Point v_bar;
  Point xi_bar;
  double margin = 0.0;
  double worst_s = 0.0;
  Point worst_y;
  Point worst_p;
};

struct PetrovReport {
  std::vector<PetrovPoint> points;
  int excluded = 0;
  bool pass = true;
  double delta = 0.0;
  double L = 0.0;
  Modulus mu;
};

PetrovReport petrov_check(const MovingSet& set, const ControlField& field, const TargetSet& target,
                          const PetrovOptions& options);

nlohmann::json to_json(const PetrovReport& report);

}  // namespace moreau

#endif  // MOREAU_SOLVER_HPP_
