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

#include "moreau/hjcheck.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "moreau/parallel.hpp"

namespace moreau {

const char* ToString(Inequality kind) {
  switch (kind) {
    case Inequality::kMinus: return "H-";
    case Inequality::kPlus: return "H+";
    case Inequality::kWeak: return "Hmeno";
    case Inequality::kStrong: return "Hpiu";
  }
  return "?";
}

namespace {

void RequireInGraph(const MovingSet& set, double tau, const Point& x) {
  bool ok = x.size() == set.dimension();
  if (ok) {
    try {
      ok = contains(set, set.check_time(tau), x);
    } catch (const Error&) {
      ok = false;
    }
  }
  if (!ok) {
    std::ostringstream os;
    os << "(tau=" << tau << ", x=" << x.transpose() << ") is not in graph(C)";
    throw Error(ErrorCode::kNotInGraph, os.str());
  }
}

// Common summands: the truncated normal-cone term and p_t - p_lambda.
double ConeTerm(const MovingSet& set, const AugmentedPoint& pt, const Covector& p, double rho) {
  const int n = set.dimension();
  if (p.size() != n + 2) {
    throw Error(ErrorCode::kInvalidArgument, "covector must have 1 + n + 1 entries");
  }
  RequireInGraph(set, pt.tau, pt.x);
  const Point px = p.segment(1, n);
  const Point proj = project_onto_cone(px, normal_generators(set, set.check_time(pt.tau), pt.x));
  return -rho * proj.norm();
}

double Rho(const MovingSet& set, const ControlField& field, double rho) {
  return rho > 0.0 ? rho : set.lipschitz() + field.bound();
}

void PushUnique(std::vector<Covector>& out, const Covector& p) {
  for (const Covector& q : out) {
    if ((q - p).norm() <= 1e-15 * std::max(1.0, p.norm())) return;
  }
  out.push_back(p);
}

std::vector<Covector> HorizontalNormals(const MovingSet& set, double t, const Point& x) {
  std::vector<Covector> out;
  const int n = set.dimension();
  for (const Covector& g : graph_normal_generators(set, t, x)) {
    Covector p = Covector::Zero(n + 2);
    p.head(n + 1) = g;
    PushUnique(out, p);
  }
  return out;
}

// One-sided differences along each (t, x) axis; returns the (epi, hypo)
// generators they imply.
NormalTable NumericNormals(const CandidateValueFunction& theta, const MovingSet& set,
                           const AugmentedPoint& pt, const ProbeParams& probe) {
  const int n = set.dimension();
  NormalTable out;
  std::optional<Covector> grad;
  if (theta.gradient) grad = theta.gradient(pt.tau, pt.x);
  std::vector<std::array<double, 2>> sides(n + 1);
  std::vector<int> kinked;
  int convex = 0;
  int concave = 0;
  if (!grad) {
    auto valid = [&](double t, const Point& x) {
      if (t < 0.0 || t > set.t_max()) return false;
      return contains(set, t, x, 0.0);
    };
    for (int a = 0; a <= n; ++a) {
      if (a == 0 && set.is_static()) {
        sides[a] = {0.0, 0.0};
        continue;
      }
      double t_plus = pt.tau;
      double t_minus = pt.tau;
      Point x_plus = pt.x;
      Point x_minus = pt.x;
      if (a == 0) {
        t_plus += probe.step;
        t_minus -= probe.step;
      } else {
        x_plus[a - 1] += probe.step;
        x_minus[a - 1] -= probe.step;
      }
      const double center = theta.value(pt.tau, pt.x);
      const bool has_plus = valid(t_plus, x_plus);
      const bool has_minus = valid(t_minus, x_minus);
      const double d_plus = has_plus ? (theta.value(t_plus, x_plus) - center) / probe.step : 0.0;
      const double d_minus =
          has_minus ? (center - theta.value(t_minus, x_minus)) / probe.step : 0.0;
      if (has_plus && has_minus) {
        sides[a] = {d_minus, d_plus};
        if (std::abs(d_plus - d_minus) > probe.kink_tol) {
          kinked.push_back(a);
          (d_plus > d_minus ? convex : concave) += 1;
        }
      } else if (has_plus || has_minus) {
        const double d = has_plus ? d_plus : d_minus;
        sides[a] = {d, d};
      }
    }
  }
  auto make = [&](const Covector& g, double sign) {
    Covector p(n + 2);
    p.head(n + 1) = sign * g;
    p[n + 1] = -sign;
    return p;
  };
  if (grad) {
    out.epi.push_back(make(*grad, 1.0));
    out.hypo.push_back(make(*grad, -1.0));
  } else if (kinked.empty()) {
    Covector g(n + 1);
    for (int a = 0; a <= n; ++a) g[a] = 0.5 * (sides[a][0] + sides[a][1]);
    out.epi.push_back(make(g, 1.0));
    out.hypo.push_back(make(g, -1.0));
  } else if (convex == 0 || concave == 0) {
    // Corner gradients: every choice of one-sided derivative on the kinked
    // axes. Convex kinks carry epigraph normals, concave ones hypograph.
    const int combos = 1 << kinked.size();
    for (int c = 0; c < combos; ++c) {
      Covector g(n + 1);
      for (int a = 0; a <= n; ++a) g[a] = 0.5 * (sides[a][0] + sides[a][1]);
      for (std::size_t k = 0; k < kinked.size(); ++k) g[kinked[k]] = sides[kinked[k]][(c >> k) & 1];
      if (concave == 0) {
        out.epi.push_back(make(g, 1.0));
      } else {
        out.hypo.push_back(make(g, -1.0));
      }
    }
  }
  for (const Covector& h : HorizontalNormals(set, set.check_time(pt.tau), pt.x)) {
    PushUnique(out.epi, h);
    PushUnique(out.hypo, h);
  }
  return out;
}

NormalTable Normals(const CandidateValueFunction& theta, const MovingSet& set,
                    const AugmentedPoint& pt, const ProbeParams& probe) {
  RequireInGraph(set, pt.tau, pt.x);
  const double value = theta.value(pt.tau, pt.x);
  if (std::abs(value - pt.lambda) > probe.value_tol * std::max(1.0, std::abs(value))) {
    std::ostringstream os;
    os << "lambda=" << pt.lambda << " but theta=" << value;
    throw Error(ErrorCode::kValueMismatch, os.str());
  }
  if (theta.normals) {
    if (auto table = theta.normals(pt.tau, pt.x)) return *table;
  }
  return NumericNormals(theta, set, pt, probe);
}

HamiltonianReport Finish(std::vector<std::vector<HamiltonianRecord>>& per_probe, double tol,
                         double rho, std::size_t skipped) {
  HamiltonianReport report;
  report.tol = tol;
  report.rho = rho;
  report.skipped = skipped;
  report.probes = per_probe.size() - skipped;
  for (auto& recs : per_probe) {
    for (auto& r : recs) {
      if (r.value > report.max_violation) {
        report.max_violation = r.value;
        report.worst = report.records.size();
      }
      report.pass = report.pass && r.pass;
      report.records.push_back(std::move(r));
    }
  }
  return report;
}

}  // namespace

double hamiltonian_minus(const MovingSet& set, const ControlField& field,
                         const AugmentedPoint& pt, const Covector& p, double rho) {
  const int n = set.dimension();
  const double cone = ConeTerm(set, pt, p, rho);
  const Point px = p.segment(1, n);
  return cone + p[0] + field.min_dot(pt.tau, pt.x, px) - p[n + 1];
}

double hamiltonian_plus(const MovingSet& set, const ControlField& field, const AugmentedPoint& pt,
                        const Covector& p, double rho) {
  const int n = set.dimension();
  const double cone = ConeTerm(set, pt, p, rho);
  const Point px = p.segment(1, n);
  return cone + p[0] + field.max_dot(pt.tau, pt.x, px) - p[n + 1];
}

std::vector<Covector> epi_normals(const CandidateValueFunction& theta, const MovingSet& set,
                                  const AugmentedPoint& pt, const ProbeParams& probe) {
  return Normals(theta, set, pt, probe).epi;
}

std::vector<Covector> hypo_normals(const CandidateValueFunction& theta, const MovingSet& set,
                                   const AugmentedPoint& pt, const ProbeParams& probe) {
  return Normals(theta, set, pt, probe).hypo;
}

SamplePlan grid_plan(const MovingSet& set, int nt, double spacing, double t_end) {
  if (nt < 1 || !(spacing > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "grid plan needs nt >= 1 and spacing > 0");
  }
  SamplePlan plan;
  Point lo;
  Point hi;
  set.bounding_box(lo, hi);
  const int n = set.dimension();
  std::vector<double> times;
  if (set.is_static() || nt == 1) {
    times.push_back(0.0);
  } else {
    const double end = std::min(t_end, set.t_max());
    for (int k = 0; k < nt; ++k) times.push_back(end * k / (nt - 1));
  }
  std::array<int, kMaxDim> counts{1, 1, 1};
  long total = 1;
  for (int i = 0; i < n; ++i) {
    counts[i] = static_cast<int>(std::floor((hi[i] - lo[i]) / spacing + 1e-9)) + 1;
    total *= counts[i];
  }
  for (double t : times) {
    for (long k = 0; k < total; ++k) {
      Point x(n);
      long rem = k;
      for (int i = 0; i < n; ++i) {
        x[i] = lo[i] + static_cast<double>(rem % counts[i]) * spacing;
        rem /= counts[i];
      }
      if (contains(set, t, x)) plan.points.emplace_back(t, x);
    }
  }
  return plan;
}

HamiltonianReport verify_candidate(const MovingSet& set, const ControlField& field,
                                   const TargetSet& target, const CandidateValueFunction& theta,
                                   const SamplePlan& plan, const VerifyOptions& options) {
  const double rho = Rho(set, field, options.rho);
  std::vector<char> in_graph(plan.points.size(), 0);
  std::size_t skipped = 0;
  for (std::size_t k = 0; k < plan.points.size(); ++k) {
    const auto& [t, x] = plan.points[k];
    if (t < 0.0 || t > set.t_max() || !contains(set, t, x)) {
      ++skipped;
      continue;
    }
    in_graph[k] = 1;
    const double v = theta.value(t, x);
    const bool on_target = contains(target, x);
    std::ostringstream os;
    if (!std::isfinite(v)) {
      os << "theta is not finite at (t=" << t << ", x=" << x.transpose() << ")";
    } else if (on_target && std::abs(v) > options.tol) {
      os << "theta=" << v << " on the target at (t=" << t << ", x=" << x.transpose() << ")";
    } else if (!on_target && v <= 0.0) {
      os << "theta=" << v << " <= 0 off the target at (t=" << t << ", x=" << x.transpose()
         << ")";
    }
    if (!os.str().empty()) throw Error(ErrorCode::kSignConditionFailed, os.str());
  }

  std::vector<std::vector<HamiltonianRecord>> per_probe(plan.points.size());
  parallel_for(plan.points.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      if (!in_graph[k]) continue;
      const auto& [t, x] = plan.points[k];
      AugmentedPoint pt{t, x, theta.value(t, x)};
      const NormalTable cones = Normals(theta, set, pt, options.probe);
      auto record = [&](const Covector& p, bool use_plus) {
        HamiltonianRecord r;
        r.point = pt;
        r.p = p;
        r.horizontal = is_horizontal(p);
        r.kind = use_plus ? Inequality::kPlus : Inequality::kMinus;
        r.value = use_plus ? hamiltonian_plus(set, field, pt, p, rho)
                           : hamiltonian_minus(set, field, pt, p, rho);
        r.pass = r.value <= options.tol;
        per_probe[k].push_back(std::move(r));
      };
      std::vector<Covector> plus_tested;
      for (const Covector& p : cones.hypo) {
        record(p, true);
        plus_tested.push_back(p);
      }
      for (const Covector& p : cones.epi) {
        if (!is_horizontal(p)) {
          record(p, false);
          continue;
        }
        const bool seen = std::any_of(plus_tested.begin(), plus_tested.end(),
                                      [&](const Covector& q) { return (q - p).norm() == 0.0; });
        if (!seen) record(p, true);
      }
    }
  });
  return Finish(per_probe, options.tol, rho, skipped);
}

namespace {

HamiltonianReport InvarianceCheck(const MovingSet& set, const ControlField& field,
                                  const StaticSet& K, const SamplePlan& plan,
                                  const VerifyOptions& options, bool strong) {
  if (K.dimension() != set.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "K and C have different dimensions");
  }
  const double rho = Rho(set, field, options.rho);
  const int n = set.dimension();
  std::vector<char> active(plan.points.size(), 0);
  std::size_t skipped = 0;
  for (std::size_t k = 0; k < plan.points.size(); ++k) {
    const auto& [t, x] = plan.points[k];
    const bool ok = t >= 0.0 && t <= set.t_max() && contains(set, t, x) && contains(K, x);
    active[k] = ok ? 1 : 0;
    if (!ok) ++skipped;
  }
  if (skipped == plan.points.size()) {
    throw Error(ErrorCode::kEmptyIntersection, "no probe lies in K intersected with graph(C)");
  }
  std::vector<std::vector<HamiltonianRecord>> per_probe(plan.points.size());
  parallel_for(plan.points.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      if (!active[k]) continue;
      const auto& [t, x] = plan.points[k];
      std::vector<Covector> normals;
      for (const Covector& g : graph_normal_generators(set, t, x)) {
        Covector p = Covector::Zero(n + 2);
        p.head(n + 1) = g;
        PushUnique(normals, p);
      }
      for (const Point& nk : outward_normals(K, x)) {
        Covector p = Covector::Zero(n + 2);
        p.segment(1, n) = nk;
        PushUnique(normals, p);
      }
      const AugmentedPoint pt{t, x, 0.0};
      for (const Covector& p : normals) {
        HamiltonianRecord r;
        r.point = pt;
        r.p = p.head(n + 1);
        r.horizontal = true;
        r.kind = strong ? Inequality::kStrong : Inequality::kWeak;
        r.value = strong ? hamiltonian_plus(set, field, pt, p, rho)
                         : hamiltonian_minus(set, field, pt, p, rho);
        r.pass = r.value <= options.tol;
        per_probe[k].push_back(std::move(r));
      }
    }
  });
  return Finish(per_probe, options.tol, rho, skipped);
}

}  // namespace

HamiltonianReport weak_invariance_check(const MovingSet& set, const ControlField& field,
                                        const StaticSet& K, const SamplePlan& plan,
                                        const VerifyOptions& options) {
  return InvarianceCheck(set, field, K, plan, options, false);
}

HamiltonianReport strong_invariance_check(const MovingSet& set, const ControlField& field,
                                          const StaticSet& K, const SamplePlan& plan,
                                          const VerifyOptions& options) {
  return InvarianceCheck(set, field, K, plan, options, true);
}

SamplePlan invariance_plan(const MovingSet& set, const StaticSet& K,
                           const std::vector<double>& times, int per_time) {
  SamplePlan plan;
  const int n = set.dimension();
  Point lo;
  Point hi;
  set.bounding_box(lo, hi);
  for (double t : times) {
    std::vector<Point> candidates;
    if (const auto* box = std::get_if<BoxShape>(&K.shape())) {
      for (int axis = 0; axis < n; ++axis) {
        for (double face : {box->lower[axis], box->upper[axis]}) {
          if (!std::isfinite(face)) continue;
          // Lattice on the face, clipped to the bounding box of C and of K.
          std::vector<int> others;
          for (int i = 0; i < n; ++i) {
            if (i != axis) others.push_back(i);
          }
          const int side = others.empty() ? 1 : std::max(2, static_cast<int>(std::pow(
                                                              per_time, 1.0 / others.size())));
          long total = 1;
          for (std::size_t k = 0; k < others.size(); ++k) total *= side;
          for (long k = 0; k < total; ++k) {
            Point p(n);
            p[axis] = face;
            long rem = k;
            for (int i : others) {
              const double a = std::max(lo[i], box->lower[i]);
              const double b = std::min(hi[i], box->upper[i]);
              p[i] = a + (b - a) * static_cast<double>(rem % side) / (side - 1);
              rem /= side;
            }
            candidates.push_back(p);
          }
        }
      }
    } else {
      const auto& ball = std::get<BallShape>(K.shape());
      if (n == 1) {
        candidates.push_back(ball.center - Point::Constant(1, ball.radius));
        candidates.push_back(ball.center + Point::Constant(1, ball.radius));
      } else {
        for (int k = 0; k < per_time; ++k) {
          const double a = 2.0 * std::numbers::pi * k / per_time;
          Point p = ball.center;
          p[0] += ball.radius * std::cos(a);
          p[1] += ball.radius * std::sin(a);
          candidates.push_back(p);
        }
      }
    }
    for (const Point& b : sample_boundary(set, t, per_time)) candidates.push_back(b);
    for (const Point& p : candidates) {
      if (contains(set, t, p) && contains(K, p)) plan.points.emplace_back(t, p);
    }
  }
  return plan;
}

nlohmann::json to_json(const HamiltonianReport& report) {
  auto vec = [](const auto& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::json j;
  j["pass"] = report.pass;
  j["tol"] = report.tol;
  j["rho"] = report.rho;
  j["probes"] = report.probes;
  j["skipped"] = report.skipped;
  j["max_violation"] = std::isfinite(report.max_violation) ? nlohmann::json(report.max_violation)
                                                           : nlohmann::json(nullptr);
  j["worst"] = report.worst ? nlohmann::json(*report.worst) : nlohmann::json(nullptr);
  nlohmann::json recs = nlohmann::json::array();
  for (const HamiltonianRecord& r : report.records) {
    recs.push_back({{"t", r.point.tau},
                    {"x", vec(r.point.x)},
                    {"lambda", r.point.lambda},
                    {"p", vec(r.p)},
                    {"inequality", ToString(r.kind)},
                    {"value", r.value},
                    {"pass", r.pass},
                    {"horizontal", r.horizontal}});
  }
  j["records"] = std::move(recs);
  return j;
}

void print_summary(std::ostream& out, const HamiltonianReport& report) {
  std::size_t counts[4] = {0, 0, 0, 0};
  std::size_t failures[4] = {0, 0, 0, 0};
  for (const HamiltonianRecord& r : report.records) {
    ++counts[static_cast<int>(r.kind)];
    if (!r.pass) ++failures[static_cast<int>(r.kind)];
  }
  out << std::left << std::setw(12) << "inequality" << std::setw(10) << "tests" << "failures\n";
  for (int k = 0; k < 4; ++k) {
    if (counts[k] == 0) continue;
    out << std::setw(12) << ToString(static_cast<Inequality>(k)) << std::setw(10) << counts[k]
        << failures[k] << '\n';
  }
  out << "probes " << report.probes << ", skipped " << report.skipped << ", max value "
      << report.max_violation << " (tol " << report.tol << ")\n";
  if (report.worst && !report.pass) {
    const HamiltonianRecord& w = report.records[*report.worst];
    out << "worst witness: t=" << w.point.tau << " x=" << w.point.x.transpose()
        << " lambda=" << w.point.lambda << " p=" << w.p.transpose() << " "
        << ToString(w.kind) << "=" << w.value << '\n';
  }
  out << (report.pass ? "PASS" : "FAIL") << '\n';
}

}  // namespace moreau
