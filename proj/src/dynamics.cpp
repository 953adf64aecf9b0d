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

#include "moreau/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace moreau {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void RequireStep(const MovingSet& set, const ControlField& field, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "step h must be positive");
  const double limit = max_step(set, field);
  if (h >= limit) {
    std::ostringstream os;
    os << "h=" << h << " violates h < r / (2 (L_C + M)) = " << limit;
    throw Error(ErrorCode::kStepTooLarge, os.str());
  }
}

void RequireMember(const MovingSet& set, double t, const Point& x) {
  if (!contains(set, t, x)) {
    std::ostringstream os;
    os << "x=" << x.transpose() << " is not in C(" << t << ")";
    throw Error(ErrorCode::kNotInSet, os.str());
  }
}

}  // namespace

Policy ConstantOffsetPolicy(const ControlField& field, const Point& u) {
  return [field, u](double t, const Point& x) { return field.select(t, x, u); };
}

double max_step(const MovingSet& set, const ControlField& field) {
  return set.prox_radius() / (2.0 * (set.lipschitz() + field.bound()));
}

StepResult catching_up_step(const MovingSet& set, const ControlField& field, double t,
                            const Point& x, const Point& g, double h) {
  RequireStep(set, field, h);
  t = set.check_time(t);
  const double t_next = set.check_time(t + h);
  RequireMember(set, t, x);
  const Point free = x + h * g;
  StepResult out;
  out.x_next = project(set, t_next, free);
  out.xi = (free - out.x_next) / h;
  return out;
}

Point subdifferential_step(const MovingSet& set, const ControlField& field, double t,
                           const Point& x, const Point& g, double h) {
  RequireStep(set, field, h);
  t = set.check_time(t);
  const double t_next = set.check_time(t + h);
  RequireMember(set, t, x);
  const Point free = x + h * g;
  const double d_free = distance(set, t_next, free);
  if (d_free <= 0.0) return free;

  const Point outward = free - project(set, t_next, free);
  Point direction = project_onto_cone(outward, normal_generators(set, t, x));
  if (direction.norm() <= 1e-15 * outward.norm()) direction = outward;
  direction.normalize();

  constexpr double kViolationTol = 1e-12;
  auto violation = [&](double lambda) {
    return distance(set, t_next, Point(free - h * lambda * direction));
  };
  const double cap = set.lipschitz() + field.bound();
  if (violation(cap) > kViolationTol) {
    return project(set, t_next, Point(free - h * cap * direction));
  }
  double lo = 0.0;
  double hi = cap;
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (violation(mid) > kViolationTol) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return free - h * hi * direction;
}

Point projected_step(const MovingSet& set, const ControlField& field, const Point& x,
                     const Point& g, double h) {
  if (!set.is_static()) {
    throw Error(ErrorCode::kAutonomousOnly,
                "projected inclusion is only equivalent for time-independent sets");
  }
  RequireStep(set, field, h);
  RequireMember(set, 0.0, x);
  const Point tangential = g - project_onto_cone(g, normal_generators(set, 0.0, x));
  const Point next = x + h * tangential;
  if (distance(set, 0.0, next) > 0.0) return project(set, 0.0, next);
  return next;
}

TrajectoryRecord simulate(const MovingSet& set, const ControlField& field, const Policy& policy,
                          double t0, const Point& x0, const TargetSet& target,
                          const SimulationOptions& options) {
  if (!(options.h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "step h must be positive");
  if (!(options.horizon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be nonnegative");
  }
  t0 = set.check_time(t0);
  RequireMember(set, t0, x0);
  const int n = set.dimension();
  const Point nan_row = Point::Constant(n, kNaN);

  TrajectoryRecord rec;
  auto push_state = [&](double t, const Point& x) {
    rec.times.push_back(t);
    rec.states.push_back(x);
    rec.max_violation = std::max(rec.max_violation, distance(set, t, x));
  };
  push_state(t0, x0);

  double sd = signed_distance(target, x0);
  if (sd <= options.reach_tol) {
    rec.hit_time = t0;
    rec.controls.push_back(nan_row);
    rec.corrections.push_back(nan_row);
    return rec;
  }

  const double end_time = std::min(t0 + options.horizon, set.t_max());
  double t = t0;
  Point x = x0;
  for (long k = 0;; ++k) {
    const double remaining = end_time - t;
    if (remaining <= 1e-12 * std::max(1.0, std::abs(end_time))) {
      rec.horizon_exceeded = true;
      break;
    }
    const bool full = options.h <= remaining;
    const double h = full ? options.h : remaining;
    const double t_next = full ? t0 + (k + 1) * options.h : end_time;
    const Point g = policy(t, x);
    Point x_next;
    switch (options.integrator) {
      case Integrator::kCatchingUp:
        x_next = catching_up_step(set, field, t, x, g, h).x_next;
        break;
      case Integrator::kSubdifferential:
        x_next = subdifferential_step(set, field, t, x, g, h);
        break;
      case Integrator::kProjected:
        x_next = projected_step(set, field, x, g, h);
        break;
    }
    rec.controls.push_back(g);
    rec.corrections.push_back((x + h * g - x_next) / h);
    push_state(t_next, x_next);

    const double sd_next = signed_distance(target, x_next);
    if (sd_next <= options.reach_tol) {
      const double frac = sd > sd_next ? std::clamp(sd / (sd - sd_next), 0.0, 1.0) : 1.0;
      rec.hit_time = t + frac * (t_next - t);
      break;
    }
    sd = sd_next;
    t = t_next;
    x = x_next;
  }
  rec.controls.push_back(nan_row);
  rec.corrections.push_back(nan_row);
  return rec;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record,
                          const MovingSet& set, const TargetSet& target) {
  const int n = set.dimension();
  out << "t";
  for (const char* prefix : {"x", "g", "xi"}) {
    for (int i = 1; i <= n; ++i) out << ',' << prefix << i;
  }
  out << ",d_S,d_C\n";
  const auto old_precision = out.precision(15);
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    out << record.times[k];
    for (const Point* row : {&record.states[k], &record.controls[k], &record.corrections[k]}) {
      for (int i = 0; i < n; ++i) out << ',' << (*row)[i];
    }
    out << ',' << distance(target, record.states[k]) << ','
        << distance(set, record.times[k], record.states[k]) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace moreau
