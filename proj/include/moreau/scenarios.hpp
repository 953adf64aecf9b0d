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

#ifndef MOREAU_SCENARIOS_HPP_
#define MOREAU_SCENARIOS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moreau/control.hpp"
#include "moreau/geometry.hpp"
#include "moreau/hjcheck.hpp"

namespace moreau {

/// Declared singular curve or point of the exact value function, with probe
/// points at which its hand-computed cones apply.
struct SingularFeature {
  std::string name;
  std::vector<std::pair<double, Point>> probes;
};

struct ScenarioBundle {
  std::string name;
  MovingSet set;
  ControlField field;
  TargetSet target;
  std::optional<CandidateValueFunction> exact_T;
  std::vector<SingularFeature> features;
  double rho;
};

/// C(t) = [-1 + t, 2] on [0, 3], G(t, x) = x + [-1, 1], S = {x >= 2}.
ScenarioBundle example1();

/// C = [-5, 5] x [0, 4] minus the open unit disk at (0, 2),
/// G = conv{(-1, 1), (1, 1), (0, 0)}, S = {y >= 4}.
ScenarioBundle example2();

/// Looks up "example1" or "example2"; throws ConfigError otherwise.
ScenarioBundle scenario_by_name(const std::string& name);

double example1_exact_T(double t, double x);
/// (d_t T, d_x T) away from the switching curve x = -1 + e^{t - 1}.
std::optional<Covector> example1_gradient(double t, double x);
/// Hand-computed cones at the corners and singular curves; nullopt elsewhere.
std::optional<NormalTable> example1_normals(double t, double x);

double example2_T1(double y0);
double example2_T2(double y0);
double example2_T3(double y0);
double example2_T1_prime(double y0);
double example2_T3_prime(double y0);
bool example2_in_D(double x, double y);
double example2_exact_T(double x, double y);
/// (d_x T, d_y T) where T is differentiable.
std::optional<Point> example2_gradient(double x, double y);
/// Cones at boundary points of C and on the junction x = 0 inside D.
std::optional<NormalTable> example2_normals(double x, double y);

/// exact_T of example 1 plus amplitude * (2 - x) * a smooth bump supported in
/// the interior of graph(C) around (t, x) = (1.5, 1).
CandidateValueFunction example1_bump_candidate(double amplitude = 0.1);

/// Feature probes plus a regular lattice of graph(C).
SamplePlan verification_plan(const ScenarioBundle& bundle);

}  // namespace moreau

#endif  // MOREAU_SCENARIOS_HPP_
