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

#ifndef MOREAU_HJCHECK_HPP_
#define MOREAU_HJCHECK_HPP_

#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"
#include "moreau/control.hpp"
#include "moreau/geometry.hpp"

namespace moreau {

/// Point (tau, x, lambda) of graph(C) x R.
struct AugmentedPoint {
  double tau = 0.0;
  Point x;
  double lambda = 0.0;
};

/// Generators of the proximal normal cones of epi(theta) and hypo(theta),
/// as covectors (p_t, p_x, p_lambda).
struct NormalTable {
  std::vector<Covector> epi;
  std::vector<Covector> hypo;
};

struct CandidateValueFunction {
  std::function<double(double, const Point&)> value;
  /// (d_t theta, grad_x theta) where theta is differentiable; optional.
  std::function<std::optional<Covector>(double, const Point&)> gradient;
  /// Hand-computed cones at declared singular points; optional.
  std::function<std::optional<NormalTable>(double, const Point&)> normals;
};

/// min over v in -N_{C(tau)}(x) cap rho B of v.p_x plus
/// min over g in G(tau, x) of p_t + g.p_x - p_lambda.
double hamiltonian_minus(const MovingSet& set, const ControlField& field,
                         const AugmentedPoint& pt, const Covector& p, double rho);

/// As hamiltonian_minus with the G-term maximized.
double hamiltonian_plus(const MovingSet& set, const ControlField& field, const AugmentedPoint& pt,
                        const Covector& p, double rho);

struct ProbeParams {
  double step = 1e-6;
  double kink_tol = 1e-4;
  double value_tol = 1e-9;
};

inline bool is_horizontal(const Covector& p) { return p[p.size() - 1] == 0.0; }

std::vector<Covector> epi_normals(const CandidateValueFunction& theta, const MovingSet& set,
                                  const AugmentedPoint& pt, const ProbeParams& probe = {});
std::vector<Covector> hypo_normals(const CandidateValueFunction& theta, const MovingSet& set,
                                   const AugmentedPoint& pt, const ProbeParams& probe = {});

/// Probe points (t, x) of graph(C).
struct SamplePlan {
  std::vector<std::pair<double, Point>> points;
};

/// Regular nodes of graph(C): `nt` times in [0, t_end] (one for static
/// sets) times a lattice of spacing `spacing` over the bounding box.
SamplePlan grid_plan(const MovingSet& set, int nt, double spacing, double t_end = kInf);

enum class Inequality { kMinus, kPlus, kWeak, kStrong };

const char* ToString(Inequality kind);

struct HamiltonianRecord {
  AugmentedPoint point;
  Covector p;
  Inequality kind = Inequality::kMinus;
  double value = 0.0;
  bool pass = true;
  bool horizontal = false;
};

struct HamiltonianReport {
  std::vector<HamiltonianRecord> records;
  bool pass = true;
  double max_violation = -kInf;
  std::optional<std::size_t> worst;
  std::size_t probes = 0;
  std::size_t skipped = 0;
  double tol = 0.0;
  double rho = 0.0;
};

struct VerifyOptions {
  double tol = 1e-9;
  // Truncation radius; 0 means L_C + M.
  double rho = 0.0;
  ProbeParams probe;
  int workers = 1;
};

/// Tests (H_-) at epigraph normals and (H_+) at hypograph normals over the
/// plan. Horizontal epigraph normals are tested against (H_+) only.
/// Throws SignConditionFailed unless theta = 0 on S and theta > 0 off S.
HamiltonianReport verify_candidate(const MovingSet& set, const ControlField& field,
                                   const TargetSet& target, const CandidateValueFunction& theta,
                                   const SamplePlan& plan, const VerifyOptions& options = {});

HamiltonianReport weak_invariance_check(const MovingSet& set, const ControlField& field,
                                        const StaticSet& K, const SamplePlan& plan,
                                        const VerifyOptions& options = {});
HamiltonianReport strong_invariance_check(const MovingSet& set, const ControlField& field,
                                          const StaticSet& K, const SamplePlan& plan,
                                          const VerifyOptions& options = {});

/// Boundary points of K and of C(t) lying in K cap C(t) at the given times.
SamplePlan invariance_plan(const MovingSet& set, const StaticSet& K,
                           const std::vector<double>& times, int per_time);

nlohmann::json to_json(const HamiltonianReport& report);
void print_summary(std::ostream& out, const HamiltonianReport& report);

}  // namespace moreau

#endif  // MOREAU_HJCHECK_HPP_
