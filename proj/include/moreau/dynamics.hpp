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

#ifndef MOREAU_DYNAMICS_HPP_
#define MOREAU_DYNAMICS_HPP_

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "moreau/control.hpp"
#include "moreau/geometry.hpp"

namespace moreau {

/// State-feedback control selection (t, x) -> g in G(t, x).
using Policy = std::function<Point(double, const Point&)>;

/// g = A x + u with a fixed offset u.
Policy ConstantOffsetPolicy(const ControlField& field, const Point& u);

struct StepResult {
  Point x_next;
  Point xi;
};

/// One catching-up step: x_next = P_{C(t+h)}(x + h g), xi = (x + h g - x_next) / h.
StepResult catching_up_step(const MovingSet& set, const ControlField& field, double t,
                            const Point& x, const Point& g, double h);

/// Explicit Euler step of x' in -(L_C + M) dd_{C(t)}(x) + g with the smallest
/// multiplier that lands in C(t+h).
Point subdifferential_step(const MovingSet& set, const ControlField& field, double t,
                           const Point& x, const Point& g, double h);

/// x + h Pi_{T_C(x)}(g), followed by a safety projection. Static sets only.
Point projected_step(const MovingSet& set, const ControlField& field, const Point& x,
                     const Point& g, double h);

/// Largest admissible step r / (2 (L_C + M)).
double max_step(const MovingSet& set, const ControlField& field);

enum class Integrator { kCatchingUp, kSubdifferential, kProjected };

struct SimulationOptions {
  double h = 1e-3;
  double horizon = 10.0;
  Integrator integrator = Integrator::kCatchingUp;
  double reach_tol = kMembershipTol;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Point> states;
  // Row k holds the control used on [t_k, t_{k+1}] and the realized normal
  // correction of that step; the final row is NaN.
  std::vector<Point> controls;
  std::vector<Point> corrections;
  std::optional<double> hit_time;
  double max_violation = 0.0;
  bool horizon_exceeded = false;
};

TrajectoryRecord simulate(const MovingSet& set, const ControlField& field, const Policy& policy,
                          double t0, const Point& x0, const TargetSet& target,
                          const SimulationOptions& options);

/// Columns t, x1..xn, g1..gn, xi1..xin, d_S, d_C.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record,
                          const MovingSet& set, const TargetSet& target);

}  // namespace moreau

#endif  // MOREAU_DYNAMICS_HPP_
