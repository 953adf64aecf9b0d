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

#include "moreau/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace moreau {

namespace {

constexpr double kFeatureTol = 1e-9;
const double kSqrt2 = std::numbers::sqrt2;
const double kLog3 = std::log(3.0);

Covector Cov(std::initializer_list<double> v) { return MakeCovector(v); }

[[noreturn]] void OutsideGraph(double t, const Point& x) {
  std::ostringstream os;
  os << "(t=" << t << ", x=" << x.transpose() << ") is not in graph(C)";
  throw Error(ErrorCode::kOutsideGraph, os.str());
}

// Switching curve of example 1: x = -1 + e^{t-1}, t in [0, 1].
double Gamma(double t) { return std::exp(t - 1.0) - 1.0; }

void CheckExample1Graph(double t, double x) {
  if (t < -kFeatureTol || t > 3.0 + kFeatureTol || x < -1.0 + t - kFeatureTol ||
      x > 2.0 + kFeatureTol) {
    OutsideGraph(t, MakePoint({x}));
  }
}

void CheckT1Domain(double y0) {
  if (!(y0 >= 2.0 - kSqrt2 - 1e-12 && y0 <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "y0=" << y0 << " outside (2 - sqrt 2, 1]";
    throw Error(ErrorCode::kDomainError, os.str());
  }
}

// Radicand -y0^2 + 4 y0 - 2 = 2 - (2 - y0)^2, clamped at the endpoint.
double Radicand(double y0) { return std::max(0.0, 2.0 - (2.0 - y0) * (2.0 - y0)); }

}  // namespace

// ---------------------------------------------------------------------------
// Example 1

double example1_exact_T(double t, double x) {
  CheckExample1Graph(t, x);
  if (t <= 1.0 && x <= Gamma(t)) return 1.0 + kLog3 - t;
  return kLog3 - std::log(1.0 + x);
}

std::optional<Covector> example1_gradient(double t, double x) {
  CheckExample1Graph(t, x);
  if (t <= 1.0 + kFeatureTol && std::abs(x - Gamma(std::min(t, 1.0))) <= kFeatureTol) {
    return std::nullopt;
  }
  if (t <= 1.0 && x < Gamma(t)) return Cov({-1.0, 0.0});
  return Cov({0.0, -1.0 / (1.0 + x)});
}

std::optional<NormalTable> example1_normals(double t, double x) {
  CheckExample1Graph(t, x);
  auto near = [](double a, double b) { return std::abs(a - b) <= kFeatureTol; };
  const bool at_start = near(t, 0.0);
  const bool on_left = near(x, -1.0 + t);
  const bool on_right = near(x, 2.0);
  const bool on_gamma = t <= 1.0 + kFeatureTol && near(x, Gamma(std::min(t, 1.0)));
  NormalTable out;
  if (at_start && on_left) {
    out.epi = {Cov({0, -1, 0}), Cov({1, -1, 0}), Cov({-1, 0, -1})};
    out.hypo = {Cov({0, -1, 0}), Cov({1, -1, 0}), Cov({1, 0, 1})};
  } else if (near(t, 3.0)) {
    out.epi = {Cov({0, 1, 0}), Cov({1, -1, 0}), Cov({0, -1.0 / 3.0, -1})};
    out.hypo = {Cov({0, 1, 0}), Cov({1, -1, 0}), Cov({0, 1.0 / 3.0, 1})};
  } else if (at_start && on_right) {
    out.epi = {Cov({0, 1, 0}), Cov({-1, 0, 0}), Cov({0, -1.0 / 3.0, -1})};
    out.hypo = {Cov({0, 1, 0}), Cov({-1, 0, 0}), Cov({0, 1.0 / 3.0, 1})};
  } else if (near(t, 1.0) && near(x, 0.0)) {
    out.epi = {Cov({1, -1, 0})};
    out.hypo = {Cov({1, -1, 0}), Cov({1, 0, 1}), Cov({0, 1, 1})};
  } else if (at_start && on_gamma) {
    out.epi = {Cov({-1, 0, 0}), Cov({0, -std::numbers::e, -1})};
    out.hypo = {Cov({-1, 0, 0}), Cov({1, 0, 1}), Cov({0, std::numbers::e, 1})};
  } else if (on_right) {
    out.epi = {Cov({0, 1, 0}), Cov({0, -1.0 / 3.0, -1})};
    out.hypo = {Cov({0, 1, 0}), Cov({0, 1.0 / 3.0, 1})};
  } else if (on_left && t < 1.0) {
    out.epi = {Cov({1, -1, 0}), Cov({-1, 0, -1})};
    out.hypo = {Cov({1, -1, 0}), Cov({1, 0, 1})};
  } else if (on_left) {
    out.epi = {Cov({1, -1, 0}), Cov({0, -1.0 / t, -1})};
    out.hypo = {Cov({1, -1, 0}), Cov({0, 1.0 / t, 1})};
  } else if (at_start && x < Gamma(0.0)) {
    out.epi = {Cov({-1, 0, 0}), Cov({-1, 0, -1})};
    out.hypo = {Cov({-1, 0, 0}), Cov({1, 0, 1})};
  } else if (at_start) {
    out.epi = {Cov({-1, 0, 0}), Cov({0, -1.0 / (x + 1.0), -1})};
    out.hypo = {Cov({-1, 0, 0}), Cov({0, 1.0 / (x + 1.0), 1})};
  } else if (on_gamma) {
    // Upward kink: the epigraph has no nonzero proximal normal.
    out.hypo = {Cov({1, 0, 1}), Cov({0, std::exp(1.0 - t), 1})};
  } else {
    return std::nullopt;
  }
  return out;
}

ScenarioBundle example1() {
  Matrix drift(1, 1);
  drift << 1.0;
  CandidateValueFunction exact;
  exact.value = [](double t, const Point& x) { return example1_exact_T(t, x[0]); };
  exact.gradient = [](double t, const Point& x) { return example1_gradient(t, x[0]); };
  exact.normals = [](double t, const Point& x) { return example1_normals(t, x[0]); };

  std::vector<SingularFeature> features;
  auto point = [](double t, double x) { return std::make_pair(t, MakePoint({x})); };
  features.push_back({"corner (0,-1)", {point(0, -1)}});
  features.push_back({"corner (3,2)", {point(3, 2)}});
  features.push_back({"corner (0,2)", {point(0, 2)}});
  features.push_back({"corner (1,0)", {point(1, 0)}});
  features.push_back({"junction (0,-1+1/e)", {point(0, Gamma(0.0))}});
  SingularFeature right{"right edge x=2", {}};
  SingularFeature g1{"Gamma1 left edge t<1", {}};
  SingularFeature g3{"Gamma3 left edge t>1", {}};
  SingularFeature g2{"Gamma2 t=0 below the switch", {}};
  SingularFeature g4{"Gamma4 t=0 above the switch", {}};
  SingularFeature g5{"Gamma5 switching curve", {}};
  for (int k = 1; k <= 9; ++k) {
    const double s = k / 10.0;
    right.probes.push_back(point(3.0 * s, 2.0));
    g1.probes.push_back(point(s, -1.0 + s));
    g3.probes.push_back(point(1.0 + 2.0 * s, s * 2.0));
    g2.probes.push_back(point(0.0, -1.0 + s * (Gamma(0.0) + 1.0)));
    g4.probes.push_back(point(0.0, Gamma(0.0) + s * (2.0 - Gamma(0.0))));
    g5.probes.push_back(point(s, Gamma(s)));
  }
  for (auto* f : {&right, &g1, &g3, &g2, &g4, &g5}) features.push_back(std::move(*f));

  return ScenarioBundle{"example1",
                        MovingSet::Interval(-1.0, 1.0, 2.0, 0.0),
                        ControlField::Polytope(drift, {MakePoint({-1.0}), MakePoint({1.0})}, 3.0,
                                               1.0),
                        StaticSet::HalfSpace(1, 0, 2.0, true),
                        exact,
                        std::move(features),
                        4.0};
}

namespace {

double Bump(double t, double x, double& dt, double& dx) {
  constexpr double tc = 1.5, xc = 1.0, wt = 0.4, wx = 0.3;
  const double q = (t - tc) * (t - tc) / (wt * wt) + (x - xc) * (x - xc) / (wx * wx);
  dt = 0.0;
  dx = 0.0;
  if (q >= 1.0) return 0.0;
  const double b = std::exp(1.0 - 1.0 / (1.0 - q));
  const double db_dq = -b / ((1.0 - q) * (1.0 - q));
  dt = db_dq * 2.0 * (t - tc) / (wt * wt);
  dx = db_dq * 2.0 * (x - xc) / (wx * wx);
  return b;
}

}  // namespace

CandidateValueFunction example1_bump_candidate(double amplitude) {
  CandidateValueFunction theta;
  theta.value = [amplitude](double t, const Point& x) {
    double bt, bx;
    return example1_exact_T(t, x[0]) + amplitude * (2.0 - x[0]) * Bump(t, x[0], bt, bx);
  };
  theta.gradient = [amplitude](double t, const Point& x) -> std::optional<Covector> {
    auto g = example1_gradient(t, x[0]);
    if (!g) return std::nullopt;
    double bt, bx;
    const double b = Bump(t, x[0], bt, bx);
    (*g)[0] += amplitude * (2.0 - x[0]) * bt;
    (*g)[1] += amplitude * (-b + (2.0 - x[0]) * bx);
    return g;
  };
  theta.normals = [](double t, const Point& x) { return example1_normals(t, x[0]); };
  return theta;
}

// ---------------------------------------------------------------------------
// Example 2

double example2_T1(double y0) {
  CheckT1Domain(y0);
  return 0.5 * (-std::sqrt(Radicand(y0)) - y0 + 2.0);
}

double example2_T2(double y0) {
  const double t1 = std::clamp(example2_T1(y0), 0.0, 0.5 * kSqrt2);
  const double margin = 1.0 - 1e-15;
  const double a = std::clamp(1.0 - kSqrt2, -margin, margin);
  const double b = std::clamp((std::tan(0.5 * std::asin(t1)) - 1.0) / kSqrt2, -margin, margin);
  return kSqrt2 * (std::atanh(a) - std::atanh(b));
}

double example2_T3(double y0) {
  return example2_T1(y0) + example2_T2(y0) + 2.0 + 0.5 * kSqrt2;
}

double example2_T1_prime(double y0) {
  CheckT1Domain(y0);
  const double root = std::sqrt(Radicand(y0));
  if (root == 0.0) return -kInf;
  return -0.5 + (y0 - 2.0) / (2.0 * root);
}

double example2_T3_prime(double y0) {
  // T1' (1 - 1 / (s (T1 + s))) with s = sqrt(1 - T1^2), rewritten with
  // u = 2 - y0 so that the removable singularity at y0 = 2 - sqrt 2 cancels.
  CheckT1Domain(y0);
  const double u = 2.0 - y0;
  const double root = std::sqrt(Radicand(y0));
  const double t1 = std::clamp(0.5 * (u - root), 0.0, 0.5 * kSqrt2);
  const double s = std::sqrt(1.0 - t1 * t1);
  const double q = t1 * s + s * s;
  return -(root + u) * t1 * u / (2.0 * (s + t1) * q);
}

bool example2_in_D(double x, double y) {
  const double ax = std::abs(x);
  if (!(ax < 0.5 * kSqrt2)) return false;
  if (!(ax + 2.0 - kSqrt2 < y && y < 2.0 - 0.5 * kSqrt2)) return false;
  return x * x + (y - 2.0) * (y - 2.0) >= 1.0 - kFeatureTol;
}

namespace {

void CheckExample2Graph(double x, double y) {
  const bool in_box = std::abs(x) <= 5.0 + kFeatureTol && y >= -kFeatureTol && y <= 4.0 + kFeatureTol;
  const bool off_disk = std::hypot(x, y - 2.0) >= 1.0 - kFeatureTol;
  if (!in_box || !off_disk) OutsideGraph(0.0, MakePoint({x, y}));
}

Point DGradient(double x, double y) {
  const double d = example2_T3_prime(y - std::abs(x));
  const double sign = x >= 0.0 ? 1.0 : -1.0;
  return MakePoint({sign * (-1.0 - d), d});
}

}  // namespace

double example2_exact_T(double x, double y) {
  CheckExample2Graph(x, y);
  if (example2_in_D(x, y)) {
    const double ax = std::abs(x);
    return example2_T3(std::min(1.0, y - ax)) - ax;
  }
  return 4.0 - y;
}

std::optional<Point> example2_gradient(double x, double y) {
  CheckExample2Graph(x, y);
  const double ax = std::abs(x);
  // Kinks: the symmetry axis inside D and the straight edge of D.
  const bool near_axis = ax <= kFeatureTol && y > 2.0 - kSqrt2 - kFeatureTol &&
                         y < 2.0 - 0.5 * kSqrt2 + kFeatureTol;
  const bool near_edge = ax <= 0.5 * kSqrt2 + kFeatureTol &&
                         std::abs(y - ax - (2.0 - kSqrt2)) <= kFeatureTol;
  if (near_axis || near_edge) return std::nullopt;
  if (example2_in_D(x, y)) return DGradient(x, y);
  return MakePoint({0.0, -1.0});
}

std::optional<NormalTable> example2_normals(double x, double y) {
  CheckExample2Graph(x, y);
  static const MovingSet set =
      MovingSet::BoxMinusBall(MakePoint({-5, 0}), MakePoint({5, 4}), MakePoint({0, 2}), 1.0);
  const Point p = MakePoint({x, y});
  const std::vector<Point> gens = normal_generators(set, 0.0, p, kFeatureTol);
  const bool junction = std::abs(x) <= kFeatureTol && example2_in_D(0.0, y);
  if (gens.empty() && !junction) return std::nullopt;
  NormalTable out;
  for (const Point& n : gens) {
    const Covector h = Cov({0.0, n[0], n[1], 0.0});
    out.epi.push_back(h);
    out.hypo.push_back(h);
  }
  if (junction) {
    // Peak along the symmetry axis: limiting gradients from both sides enter
    // the hypograph cone only.
    const double d = example2_T3_prime(std::min(1.0, y));
    for (double side : {1.0, -1.0}) {
      out.hypo.push_back(Cov({0.0, side * (1.0 + d), -d, 1.0}));
    }
    return out;
  }
  const Point grad = example2_in_D(x, y) ? DGradient(x, y) : MakePoint({0.0, -1.0});
  out.epi.push_back(Cov({0.0, grad[0], grad[1], -1.0}));
  out.hypo.push_back(Cov({0.0, -grad[0], -grad[1], 1.0}));
  return out;
}

ScenarioBundle example2() {
  CandidateValueFunction exact;
  exact.value = [](double, const Point& x) { return example2_exact_T(x[0], x[1]); };
  exact.gradient = [](double, const Point& x) -> std::optional<Covector> {
    const auto g = example2_gradient(x[0], x[1]);
    if (!g) return std::nullopt;
    return Cov({0.0, (*g)[0], (*g)[1]});
  };
  exact.normals = [](double, const Point& x) { return example2_normals(x[0], x[1]); };

  auto point = [](double x, double y) { return std::make_pair(0.0, MakePoint({x, y})); };
  std::vector<SingularFeature> features;
  features.push_back({"vertices", {point(5, 0), point(-5, 0), point(5, 4), point(-5, 4)}});
  SingularFeature sides{"vertical edges", {}};
  SingularFeature bottom{"bottom edge", {}};
  SingularFeature top{"top edge", {}};
  SingularFeature a1{"arc A1", {}};
  SingularFeature a2{"arc A2", {}};
  SingularFeature axis{"junction x=0 in D", {}};
  const double y_p = 2.0 - 0.5 * kSqrt2;
  for (int k = 1; k <= 9; ++k) {
    const double s = k / 10.0;
    for (double sign : {1.0, -1.0}) {
      sides.probes.push_back(point(sign * 5.0, 4.0 * s));
      const double xa = sign * 0.5 * kSqrt2 * s;
      a1.probes.push_back(point(xa, 2.0 - std::sqrt(1.0 - xa * xa)));
      const double ya = y_p + s * (3.0 - y_p);
      a2.probes.push_back(point(sign * std::sqrt(1.0 - (ya - 2.0) * (ya - 2.0)), ya));
    }
    bottom.probes.push_back(point(-5.0 + 10.0 * s, 0.0));
    top.probes.push_back(point(-5.0 + 10.0 * s, 4.0));
    axis.probes.push_back(point(0.0, 2.0 - kSqrt2 + s * (kSqrt2 - 1.0)));
  }
  axis.probes.push_back(point(0.0, 1.0));
  features.push_back({"departure points P", {point(0.5 * kSqrt2, y_p), point(-0.5 * kSqrt2, y_p)}});
  for (auto* f : {&sides, &bottom, &top, &a1, &a2, &axis}) features.push_back(std::move(*f));

  return ScenarioBundle{
      "example2",
      MovingSet::BoxMinusBall(MakePoint({-5, 0}), MakePoint({5, 4}), MakePoint({0, 2}), 1.0),
      ControlField::Polytope(Matrix::Zero(2, 2),
                             {MakePoint({-1, 1}), MakePoint({1, 1}), MakePoint({0, 0})}, kSqrt2,
                             0.0),
      StaticSet::HalfSpace(2, 1, 4.0, true),
      exact,
      std::move(features),
      kSqrt2};
}

ScenarioBundle scenario_by_name(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  throw Error(ErrorCode::kConfigError, "unknown scenario '" + name + "'");
}

SamplePlan verification_plan(const ScenarioBundle& bundle) {
  SamplePlan plan;
  for (const SingularFeature& f : bundle.features) {
    for (const auto& probe : f.probes) plan.points.push_back(probe);
  }
  const SamplePlan lattice = bundle.set.is_static() ? grid_plan(bundle.set, 1, 0.1)
                                                    : grid_plan(bundle.set, 31, 0.05);
  plan.points.insert(plan.points.end(), lattice.points.begin(), lattice.points.end());
  return plan;
}

}  // namespace moreau
