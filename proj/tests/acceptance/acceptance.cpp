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

// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion and exits
// with the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "moreau/dynamics.hpp"
#include "moreau/geometry.hpp"
#include "moreau/hjcheck.hpp"
#include "moreau/scenarios.hpp"
#include "moreau/solver.hpp"

#ifndef MOREAU_CLI_PATH
#define MOREAU_CLI_PATH "moreau"
#endif

using namespace moreau;

namespace {

const double kLog3 = std::log(3.0);
const double kSqrt2 = std::numbers::sqrt2;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int RunCli(const std::string& args) {
  const std::string cmd = std::string(MOREAU_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void Criterion1(Outcome& o) {
  const ScenarioBundle s = example1();
  GridParams params;
  params.dx = 5e-3;
  params.dt = 2.5e-3;
  params.workers = 1;
  const auto start = std::chrono::steady_clock::now();
  const ValueGrid grid = solve_mintime(s.set, s.field, s.target, params);
  const double wall = Seconds(start);
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double t = 3.0 * unit(rng);
    const double x = -1.0 + t + (3.0 - t) * unit(rng);
    worst = std::max(worst, std::abs(mintime_at(grid, t, MakePoint({x})) - example1_exact_T(t, x)));
  }
  o.detail << "max error " << worst << " over 200 probes, solve " << wall << " s";
  o.Check(worst <= 0.05, "max error <= 0.05");
  o.Check(wall < 30.0, "runtime < 30 s");
}

void Criterion2(Outcome& o) {
  const ScenarioBundle s = example1();
  SimulationOptions options;
  options.h = 1e-4;
  options.horizon = 3.0;
  const TrajectoryRecord rec = simulate(s.set, s.field,
                                        ConstantOffsetPolicy(s.field, MakePoint({1.0})), 0.0,
                                        MakePoint({-1.0}), s.target, options);
  o.Check(rec.hit_time.has_value(), "target reached");
  const double hit = rec.hit_time.value_or(kInf);
  double drag = 0.0;
  for (std::size_t k = 0; k < rec.times.size() && rec.times[k] <= 1.0; ++k) {
    drag = std::max(drag, std::abs(rec.states[k][0] - (-1.0 + rec.times[k])));
  }
  o.detail << "hit_time " << hit << " (1+log 3 = " << 1.0 + kLog3 << "), drag deviation " << drag;
  o.Check(std::abs(hit - (1.0 + kLog3)) <= 5e-3, "hit time within 5e-3");
  o.Check(drag <= 2.0 * options.h, "x(t) = -1+t +- 2h on [0,1]");
}

void Criterion3(Outcome& o) {
  const ScenarioBundle s = example2();
  GridParams params;
  params.dx = 0.02;
  params.dt = 0.02;
  params.vi_tol = 1e-9;
  const auto start = std::chrono::steady_clock::now();
  const ValueGrid grid = solve_mintime(s.set, s.field, s.target, params);
  const double wall = Seconds(start);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(0.0, 4.0), ud(0.0, 1.0);
  double off_d = 0.0, in_d = 0.0;
  int n_off = 0, n_in = 0;
  while (n_off < 200) {
    const Point p = MakePoint({ux(rng), uy(rng)});
    if (!contains(s.set, 0.0, p) || example2_in_D(p[0], p[1])) continue;
    off_d = std::max(off_d, std::abs(mintime_at(grid, 0.0, p) - (4.0 - p[1])));
    ++n_off;
  }
  while (n_in < 200) {
    const double x = 0.5 * kSqrt2 * ud(rng);
    const double y = 2.0 - kSqrt2 + x + (0.5 * kSqrt2 - x) * ud(rng);
    if (!example2_in_D(x, y) || x <= 0.0) continue;
    const double exact = example2_T3(std::min(1.0, y - x)) - x;
    in_d = std::max(in_d, std::abs(mintime_at(grid, 0.0, MakePoint({x, y})) - exact));
    ++n_in;
  }
  o.detail << "off-D max error " << off_d << ", D+ max error " << in_d << ", " << grid.iterations
           << " iterations, solve " << wall << " s";
  o.Check(off_d <= 0.05, "off-D error <= 0.05");
  o.Check(in_d <= 0.08, "D+ error <= 0.08");
  o.Check(grid.final_change < 1e-9, "value iteration converged to 1e-9");
  o.Check(wall < 300.0, "runtime < 5 min");
}

void Criterion4(Outcome& o) {
  for (const ScenarioBundle& s : {example1(), example2()}) {
    VerifyOptions options;
    options.tol = 1e-9;
    const HamiltonianReport r =
        verify_candidate(s.set, s.field, s.target, *s.exact_T, verification_plan(s), options);
    o.detail << s.name << " " << (r.pass ? "pass" : "fail") << " (" << r.records.size()
             << " tests, max " << r.max_violation << "); ";
    o.Check(r.pass, s.name + " exact_T verifies");
  }
  const ScenarioBundle s = example1();
  const AugmentedPoint pt{0.0, MakePoint({-1.0}), 1.0 + kLog3};
  const double h1 = hamiltonian_plus(s.set, s.field, pt, MakeCovector({0, -1, 0}), 4.0);
  const double h2 = hamiltonian_plus(s.set, s.field, pt, MakeCovector({1, -1, 0}), 4.0);
  const double h3 = hamiltonian_minus(s.set, s.field, pt, MakeCovector({-1, 0, -1}), 4.0);
  o.detail << "H+(0,-1,0) = " << h1 << ", H+(1,-1,0) = " << h2 << ", H-(-1,0,-1) = " << h3;
  o.Check(std::abs(h1 + 2.0) <= 1e-12, "H+ = -2 at p=(0,-1,0)");
  o.Check(std::abs(h2 + 1.0) <= 1e-12, "H+ = -1 at p=(1,-1,0)");
  o.Check(std::abs(h3 + 4.0) <= 1e-12, "H- = -4 at p=(-1,0,-1)");
}

void Criterion5(Outcome& o) {
  const ScenarioBundle s = example1();
  const HamiltonianReport r = verify_candidate(s.set, s.field, s.target,
                                               example1_bump_candidate(0.1), verification_plan(s));
  o.detail << "bump candidate: " << (r.pass ? "pass" : "fail") << ", max value "
           << r.max_violation;
  o.Check(!r.pass && r.max_violation > 0.0, "positive witness");
  if (r.worst) {
    const HamiltonianRecord& w = r.records[*r.worst];
    o.detail << " at t=" << w.point.tau << " x=" << w.point.x[0] << " (" << ToString(w.kind) << ")";
  }
  const int code = RunCli("hjcheck --scenario example1 --candidate bump --out acceptance_out");
  o.detail << ", CLI exit " << code;
  o.Check(code == 1, "CLI exit status 1");
}

double MaxGronwallExcess(const ScenarioBundle& s, const Point& x0, const Point& u, double h,
                         double rate, double horizon) {
  const double gap = 1e-3;
  Point x1 = x0;
  x1[0] += gap;
  SimulationOptions options;
  options.h = h;
  options.horizon = horizon;
  const Policy policy = ConstantOffsetPolicy(s.field, u);
  const TrajectoryRecord a = simulate(s.set, s.field, policy, 0.0, x0, s.target, options);
  const TrajectoryRecord b = simulate(s.set, s.field, policy, 0.0, x1, s.target, options);
  double excess = -kInf;
  const std::size_t steps = std::min(a.states.size(), b.states.size());
  for (std::size_t k = 0; k < steps; ++k) {
    const double bound = std::exp(rate * a.times[k]) * gap + 10.0 * h;
    excess = std::max(excess, (a.states[k] - b.states[k]).norm() - bound);
  }
  return excess;
}

void Criterion6(Outcome& o) {
  const ScenarioBundle e1 = example1();
  const ScenarioBundle e2 = example2();
  const double l2 = e2.set.lipschitz() + e2.field.bound();
  const double rate1 = e1.field.lipschitz();
  const double rate2 = 2.0 * l2 / e2.set.prox_radius() + e2.field.lipschitz();
  for (double h : {1e-3, 1e-4}) {
    const double x1 = MaxGronwallExcess(e1, MakePoint({-1.0}), MakePoint({1.0}), h, rate1, 3.0);
    const double x2 =
        MaxGronwallExcess(e2, MakePoint({-0.5, 0.3}), MakePoint({1.0, 1.0}), h, rate2, 2.0);
    o.detail << "h=" << h << ": max(gap - bound) ex1 " << x1 << ", ex2 " << x2 << "; ";
    o.Check(x1 <= 0.0, "example1 bound at h=" + std::to_string(h));
    o.Check(x2 <= 0.0, "example2 bound at h=" + std::to_string(h));
  }
}

void Criterion7(Outcome& o) {
  const MovingSet set = example2().set;
  const ProxRegularityReport r1 = check_prox_regularity(set, 1.0, 10000, 11);
  const ProxRegularityReport r2 = check_prox_regularity(set, 2.0, 10000, 11);
  o.detail << "r=1 worst margin " << r1.worst_margin << "; r=2 worst margin " << r2.worst_margin;
  o.Check(r1.pass && r1.worst_margin <= 0.0, "pass at r=1");
  o.Check(!r2.pass && r2.witness.has_value(), "fail with witness at r=2");
}

double SupGap(const ScenarioBundle& s, const Point& x0, const Point& u, double h, double horizon,
              Integrator other) {
  SimulationOptions options;
  options.h = h;
  options.horizon = horizon;
  const Policy policy = ConstantOffsetPolicy(s.field, u);
  const TrajectoryRecord a = simulate(s.set, s.field, policy, 0.0, x0, s.target, options);
  options.integrator = other;
  const TrajectoryRecord b = simulate(s.set, s.field, policy, 0.0, x0, s.target, options);
  double gap = 0.0;
  const std::size_t steps = std::min(a.states.size(), b.states.size());
  for (std::size_t k = 0; k < steps; ++k) gap = std::max(gap, (a.states[k] - b.states[k]).norm());
  return gap;
}

void CheckHalving(Outcome& o, const std::string& label, const std::vector<double>& gaps) {
  o.detail << label << " gaps";
  for (double g : gaps) o.detail << " " << g;
  o.detail << "; ";
  // Integrators that coincide up to the membership tolerance have nothing
  // left to shrink.
  const bool exact = *std::max_element(gaps.begin(), gaps.end()) <= 1e-10;
  if (exact) return;
  for (std::size_t k = 1; k < gaps.size(); ++k) {
    o.Check(gaps[k - 1] >= 1.5 * gaps[k], label + " halving ratio >= 1.5");
  }
}

void Criterion8(Outcome& o) {
  const std::vector<double> hs = {4e-3, 2e-3, 1e-3};
  const ScenarioBundle e1 = example1();
  const ScenarioBundle e2 = example2();
  std::vector<double> g1, g2, g3;
  for (double h : hs) {
    g1.push_back(SupGap(e1, MakePoint({-1.0}), MakePoint({1.0}), h, 3.0,
                        Integrator::kSubdifferential));
    g2.push_back(SupGap(e2, MakePoint({-0.5, 0.3}), MakePoint({1.0, 1.0}), h, 2.0,
                        Integrator::kSubdifferential));
    g3.push_back(SupGap(e2, MakePoint({-0.5, 0.3}), MakePoint({1.0, 1.0}), h, 2.0,
                        Integrator::kProjected));
  }
  CheckHalving(o, "ex1 catching-up/subdifferential", g1);
  CheckHalving(o, "ex2 catching-up/subdifferential", g2);
  CheckHalving(o, "ex2 catching-up/projected", g3);
}

void Criterion9(Outcome& o) {
  const double a = continuity_modulus_bound(Modulus::Constant(1.0), 0.0, 1.0, 1.0, 0.1, 0.0);
  const double b = continuity_modulus_bound(Modulus::Power(1.0, 0.5), 0.0, 1.0, 1.0, 0.01, 0.0);
  const double c = reach_time_upper_bound(Modulus::Constant(1.0), 3.0);
  const double d = reach_time_upper_bound(Modulus::Power(1.0, 0.5), 1.0);
  o.detail.precision(15);
  o.detail << a << " " << b << " " << c << " " << d;
  o.Check(std::abs(a - 0.2) <= 1e-10, "0.2");
  o.Check(std::abs(b - 0.4) <= 1e-10, "0.4");
  o.Check(std::abs(c - 6.0) <= 1e-10, "6");
  o.Check(std::abs(d - 4.0) <= 1e-10, "4");
}

void Criterion10(Outcome& o) {
  struct Case {
    ScenarioBundle s;
    std::vector<std::pair<double, Point>> probes;
  };
  std::vector<Case> cases;
  cases.push_back({example1(), {{0.0, MakePoint({-1.0})}}});
  std::vector<std::pair<double, Point>> arc;
  for (double x : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
    arc.emplace_back(0.0, MakePoint({x, 2.0 - std::sqrt(1.0 - x * x)}));
  }
  cases.push_back({example2(), arc});
  for (const Case& c : cases) {
    PetrovOptions options;
    options.probes = c.probes;
    options.samples = 50;
    const PetrovReport r = petrov_check(c.s.set, c.s.field, c.s.target, options);
    const nlohmann::json j = to_json(r);
    bool format = j.contains("pass") && j.contains("points") && j.contains("mu") &&
                  j.contains("delta") && j["points"].size() == r.points.size();
    for (const auto& p : j["points"]) {
      format = format && p.contains("margin") && p.contains("x") && p.contains("d_S") &&
               p.contains("v_bar") && p.contains("xi_bar");
    }
    o.Check(format, c.s.name + " report format");
    o.Check(r.points.size() >= c.probes.size(), c.s.name + " probes reported");
    o.detail << c.s.name << " margins at documented points:";
    for (std::size_t k = 0; k < c.probes.size() && k < r.points.size(); ++k) {
      o.detail << " " << r.points[k].margin;
      o.Check(r.points[k].margin >= 0.0, c.s.name + " nonnegative margin");
    }
    o.detail << "; ";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"Example 1 grid vs closed form", Criterion1},
      {"Example 1 hit time and dragging", Criterion2},
      {"Example 2 grid vs closed form", Criterion3},
      {"HJ verification of exact T", Criterion4},
      {"HJ verification rejects bump", Criterion5},
      {"Gronwall contraction", Criterion6},
      {"Prox-regularity certification", Criterion7},
      {"Integrator equivalences", Criterion8},
      {"Quadrature identities", Criterion9},
      {"Petrov diagnostics", Criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
              << " -- " << o.detail.str() << std::endl;
  }
  return failures;
}
