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

#include "moreau/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "moreau/parallel.hpp"

namespace moreau {

const char* ToString(NodeStatus status) {
  switch (status) {
    case NodeStatus::kTarget: return "TARGET";
    case NodeStatus::kReached: return "REACHED";
    case NodeStatus::kUnreached: return "UNREACHED";
    case NodeStatus::kOutsideC: return "OUTSIDE_C";
  }
  return "UNKNOWN";
}

std::size_t ValueGrid::nodes_per_slice() const {
  std::size_t out = 1;
  for (int i = 0; i < dimension; ++i) out *= static_cast<std::size_t>(counts[i]);
  return out;
}

Point ValueGrid::node(std::size_t flat) const {
  Point p(dimension);
  for (int i = 0; i < dimension; ++i) {
    const std::size_t idx = flat % static_cast<std::size_t>(counts[i]);
    flat /= static_cast<std::size_t>(counts[i]);
    p[i] = lower[i] + static_cast<double>(idx) * spacing[i];
  }
  return p;
}

namespace {

constexpr int kMaxCorners = 1 << kMaxDim;

struct Stencil {
  std::array<std::int32_t, kMaxCorners> index{};
  std::array<double, kMaxCorners> weight{};
  int count = 0;
};

Stencil MakeStencil(const ValueGrid& grid, const Point& y) {
  Stencil st;
  std::array<int, kMaxDim> base{};
  std::array<double, kMaxDim> frac{};
  for (int i = 0; i < grid.dimension; ++i) {
    const double f = (y[i] - grid.lower[i]) / grid.spacing[i];
    int i0 = static_cast<int>(std::floor(f));
    i0 = std::clamp(i0, 0, grid.counts[i] - 2);
    base[i] = i0;
    frac[i] = std::clamp(f - i0, 0.0, 1.0);
  }
  const int corners = 1 << grid.dimension;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::int64_t flat = 0;
    std::int64_t stride = 1;
    for (int i = 0; i < grid.dimension; ++i) {
      const int bit = (c >> i) & 1;
      w *= bit ? frac[i] : 1.0 - frac[i];
      flat += (base[i] + bit) * stride;
      stride *= grid.counts[i];
    }
    if (w <= 0.0) continue;
    st.index[st.count] = static_cast<std::int32_t>(flat);
    st.weight[st.count] = w;
    ++st.count;
  }
  return st;
}

// Weighted mean over the finite stencil values; +inf when none is finite.
double Evaluate(const Stencil& st, const double* slice) {
  double sum = 0.0;
  double wsum = 0.0;
  for (int k = 0; k < st.count; ++k) {
    const double v = slice[st.index[k]];
    if (std::isfinite(v)) {
      sum += st.weight[k] * v;
      wsum += st.weight[k];
    }
  }
  return wsum > 0.0 ? sum / wsum : kInf;
}

bool InsideGridBox(const ValueGrid& grid, const Point& y) {
  for (int i = 0; i < grid.dimension; ++i) {
    const double hi = grid.lower[i] + (grid.counts[i] - 1) * grid.spacing[i];
    if (y[i] < grid.lower[i] - 1e-9 || y[i] > hi + 1e-9) return false;
  }
  return true;
}

// One control's contribution to the Bellman update from x at time t.
struct Foot {
  Stencil stencil;
  // Fractional time to the target when the step crosses it, else negative.
  double direct = -1.0;
};

std::optional<Foot> MakeFoot(const ValueGrid& grid, const MovingSet& set, const TargetSet& target,
                             double t_next, const Point& x, double sd_x, const Point& g,
                             double dt) {
  Point y;
  try {
    y = project(set, t_next, Point(x + dt * g));
  } catch (const Error&) {
    return std::nullopt;
  }
  Foot foot;
  const double sd_y = signed_distance(target, y);
  if (sd_y <= kMembershipTol) {
    foot.direct = sd_x > sd_y ? dt * std::clamp(sd_x / (sd_x - sd_y), 0.0, 1.0) : dt;
    return foot;
  }
  if (!InsideGridBox(grid, y)) return std::nullopt;
  foot.stencil = MakeStencil(grid, y);
  return foot;
}

void CheckGrid(const MovingSet& set, const ControlField& field, const GridParams& params) {
  if (!(params.dx > 0.0) || !(params.dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "grid spacings must be positive");
  }
  if (field.dimension() != set.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "control and constraint dimensions differ");
  }
  const double speed = set.lipschitz() + field.bound();
  if (0.5 * params.dx > params.dt * speed) {
    std::ostringstream os;
    os << "dx/2 = " << 0.5 * params.dx << " exceeds dt (L_C + M) = " << params.dt * speed
       << "; feet would stay inside one cell";
    throw Error(ErrorCode::kGridTooCoarse, os.str());
  }
  if (params.dt >= max_step(set, field)) {
    std::ostringstream os;
    os << "dt=" << params.dt << " violates dt < r / (2 (L_C + M)) = " << max_step(set, field);
    throw Error(ErrorCode::kStepTooLarge, os.str());
  }
}

ValueGrid MakeGrid(const MovingSet& set, const GridParams& params) {
  ValueGrid grid;
  grid.dimension = set.dimension();
  grid.params = params;
  grid.set = std::make_shared<const MovingSet>(set);
  grid.autonomous = set.is_static();
  Point lo;
  Point hi;
  set.bounding_box(lo, hi);
  if (!lo.allFinite() || !hi.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs a bounded constraint");
  }
  grid.lower = lo - Point::Constant(grid.dimension, params.dx);
  grid.spacing = Point::Constant(grid.dimension, params.dx);
  for (int i = 0; i < grid.dimension; ++i) {
    grid.counts[i] = static_cast<int>(std::ceil((hi[i] - lo[i]) / params.dx - 1e-9)) + 3;
  }
  if (grid.autonomous) {
    grid.times = {0.0};
  } else {
    const double t_end = params.t_end.value_or(set.t_max());
    if (!std::isfinite(t_end)) {
      throw Error(ErrorCode::kInvalidArgument, "time-dependent solve needs a finite t_end");
    }
    set.check_time(t_end);
    const long steps = std::max(1L, static_cast<long>(std::ceil(t_end / params.dt - 1e-9)));
    for (long j = 0; j < steps; ++j) grid.times.push_back(j * params.dt);
    grid.times.push_back(t_end);
  }
  const std::size_t total = grid.nodes_per_slice() * grid.slices();
  grid.values.assign(total, kInf);
  grid.status.assign(total, NodeStatus::kOutsideC);
  return grid;
}

// Marks OUTSIDE_C and TARGET nodes of one slice; returns the number of
// target nodes.
std::size_t ClassifySlice(ValueGrid& grid, const MovingSet& set, const TargetSet& target,
                          std::size_t slice) {
  const std::size_t per = grid.nodes_per_slice();
  const double t = grid.times[slice];
  std::size_t targets = 0;
  for (std::size_t i = 0; i < per; ++i) {
    const Point x = grid.node(i);
    const std::size_t at = slice * per + i;
    if (!contains(set, t, x)) {
      grid.status[at] = NodeStatus::kOutsideC;
      grid.values[at] = kInf;
    } else if (contains(target, x)) {
      grid.status[at] = NodeStatus::kTarget;
      grid.values[at] = 0.0;
      ++targets;
    } else {
      grid.status[at] = NodeStatus::kUnreached;
      grid.values[at] = kInf;
    }
  }
  return targets;
}

void FinalizeStatus(ValueGrid& grid) {
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    if (grid.status[k] == NodeStatus::kUnreached && std::isfinite(grid.values[k])) {
      grid.status[k] = NodeStatus::kReached;
    }
  }
}

void SolveTimeDependent(ValueGrid& grid, const MovingSet& set, const ControlField& field,
                        const TargetSet& target, std::size_t& targets) {
  const std::size_t per = grid.nodes_per_slice();
  const std::size_t last = grid.slices() - 1;
  targets = ClassifySlice(grid, set, target, last);
  for (std::size_t j = last; j-- > 0;) {
    targets += ClassifySlice(grid, set, target, j);
    const double t = grid.times[j];
    const double t_next = grid.times[j + 1];
    const double dt = t_next - t;
    const double* next = grid.values.data() + (j + 1) * per;
    double* cur = grid.values.data() + j * per;
    const NodeStatus* status = grid.status.data() + j * per;
    parallel_for(per, grid.params.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        if (status[i] != NodeStatus::kUnreached) continue;
        const Point x = grid.node(i);
        const double sd_x = signed_distance(target, x);
        double best = kInf;
        for (const Point& g : field.extreme_points(t, x, grid.params.control_samples)) {
          const auto foot = MakeFoot(grid, set, target, t_next, x, sd_x, g, dt);
          if (!foot) continue;
          const double v = foot->direct >= 0.0 ? foot->direct : dt + Evaluate(foot->stencil, next);
          best = std::min(best, v);
        }
        cur[i] = best;
      }
    });
  }
}

void SolveAutonomous(ValueGrid& grid, const MovingSet& set, const ControlField& field,
                     const TargetSet& target, std::size_t& targets) {
  const std::size_t per = grid.nodes_per_slice();
  targets = ClassifySlice(grid, set, target, 0);
  const double dt = grid.params.dt;

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < per; ++i) {
    if (grid.status[i] == NodeStatus::kUnreached) active.push_back(i);
  }
  // Feet never change between sweeps, so build every stencil once.
  std::vector<std::vector<Foot>> feet(active.size());
  parallel_for(active.size(), grid.params.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      const Point x = grid.node(active[a]);
      const double sd_x = signed_distance(target, x);
      for (const Point& g : field.extreme_points(0.0, x, grid.params.control_samples)) {
        if (auto foot = MakeFoot(grid, set, target, 0.0, x, sd_x, g, dt)) {
          feet[a].push_back(*foot);
        }
      }
    }
  });

  std::vector<double> old_values = grid.values;
  std::vector<double>& new_values = grid.values;
  const int workers = std::max(1, grid.params.workers);
  std::vector<double> chunk_change(static_cast<std::size_t>(workers));
  for (grid.iterations = 0; grid.iterations < grid.params.max_iterations;) {
    std::fill(chunk_change.begin(), chunk_change.end(), 0.0);
    const std::size_t chunk = (active.size() + workers - 1) / workers;
    parallel_for(active.size(), workers, [&](std::size_t begin, std::size_t end) {
      double change = 0.0;
      for (std::size_t a = begin; a < end; ++a) {
        double best = kInf;
        for (const Foot& foot : feet[a]) {
          const double v =
              foot.direct >= 0.0 ? foot.direct : dt + Evaluate(foot.stencil, old_values.data());
          best = std::min(best, v);
        }
        const double prev = old_values[active[a]];
        new_values[active[a]] = best;
        if (std::isfinite(best) != std::isfinite(prev)) {
          change = kInf;
        } else if (std::isfinite(best)) {
          change = std::max(change, std::abs(best - prev));
        }
      }
      chunk_change[chunk == 0 ? 0 : begin / chunk] = change;
    });
    ++grid.iterations;
    grid.final_change = *std::max_element(chunk_change.begin(), chunk_change.end());
    if (grid.final_change < grid.params.vi_tol) break;
    for (std::size_t idx : active) old_values[idx] = new_values[idx];
  }
}

}  // namespace

ValueGrid solve_mintime(const MovingSet& set, const ControlField& field, const TargetSet& target,
                        const GridParams& params) {
  CheckGrid(set, field, params);
  ValueGrid grid = MakeGrid(set, params);
  std::size_t targets = 0;
  if (grid.autonomous) {
    SolveAutonomous(grid, set, field, target, targets);
  } else {
    SolveTimeDependent(grid, set, field, target, targets);
  }
  if (targets == 0) {
    throw Error(ErrorCode::kEmptyIntersection, "no grid node lies in S intersected with C(t)");
  }
  FinalizeStatus(grid);
  return grid;
}

double mintime_at(const ValueGrid& grid, double t0, const Point& x0) {
  const MovingSet& set = *grid.set;
  double t = t0;
  try {
    t = set.check_time(t0);
  } catch (const Error&) {
    throw Error(ErrorCode::kOutsideGraph, "time outside the constraint's domain");
  }
  if (x0.size() != grid.dimension || !contains(set, t, x0) || !InsideGridBox(grid, x0)) {
    std::ostringstream os;
    os << "(t=" << t0 << ", x=" << x0.transpose() << ") is not in graph(C)";
    throw Error(ErrorCode::kOutsideGraph, os.str());
  }
  const std::size_t per = grid.nodes_per_slice();
  const Stencil st = MakeStencil(grid, x0);
  if (grid.autonomous) return Evaluate(st, grid.values.data());
  if (t > grid.times.back() + 1e-12 || t < grid.times.front() - 1e-12) {
    throw Error(ErrorCode::kOutsideGraph, "time outside the grid");
  }
  const auto it = std::upper_bound(grid.times.begin(), grid.times.end(), t);
  std::size_t j = it == grid.times.begin() ? 0 : static_cast<std::size_t>(it - grid.times.begin()) - 1;
  j = std::min(j, grid.slices() - 2);
  const double t_lo = grid.times[j];
  const double t_hi = grid.times[j + 1];
  const double s = std::clamp((t - t_lo) / (t_hi - t_lo), 0.0, 1.0);
  const double a = Evaluate(st, grid.values.data() + j * per);
  const double b = Evaluate(st, grid.values.data() + (j + 1) * per);
  if (std::isfinite(a) && std::isfinite(b)) return (1.0 - s) * a + s * b;
  if (std::isfinite(a) && s < 1.0) return a;
  if (std::isfinite(b) && s > 0.0) return b;
  return kInf;
}

Policy greedy_policy(const ValueGrid& grid, const ControlField& field, const TargetSet& target) {
  return [&grid, field, target](double t, const Point& x) -> Point {
    const MovingSet& set = *grid.set;
    const double dt = grid.params.dt;
    const double t_next =
        grid.autonomous ? 0.0 : std::min(t + dt, grid.times.back());
    const double step = grid.autonomous ? dt : t_next - t;
    const double sd_x = signed_distance(target, x);
    const auto options = field.extreme_points(t, x, grid.params.control_samples);
    Point best = options.front();
    double best_cost = kInf;
    for (const Point& g : options) {
      double cost = kInf;
      try {
        const Point y = project(set, t_next, Point(x + step * g));
        const double sd_y = signed_distance(target, y);
        if (sd_y <= kMembershipTol) {
          cost = sd_x > sd_y ? step * sd_x / (sd_x - sd_y) : step;
        } else {
          cost = step + mintime_at(grid, t_next, y);
        }
      } catch (const Error&) {
        continue;
      }
      if (cost < best_cost) {
        best_cost = cost;
        best = g;
      }
    }
    return best;
  };
}

void write_grid_csv(std::ostream& out, const ValueGrid& grid) {
  out << "t";
  for (int i = 1; i <= grid.dimension; ++i) out << ",x" << i;
  out << ",T,status\n";
  const auto old_precision = out.precision(15);
  const std::size_t per = grid.nodes_per_slice();
  for (std::size_t j = 0; j < grid.slices(); ++j) {
    for (std::size_t i = 0; i < per; ++i) {
      const Point x = grid.node(i);
      out << grid.times[j];
      for (int d = 0; d < grid.dimension; ++d) out << ',' << x[d];
      const double v = grid.values[j * per + i];
      out << ',';
      if (std::isfinite(v)) {
        out << v;
      } else {
        out << "inf";
      }
      out << ',' << ToString(grid.status[j * per + i]) << '\n';
    }
  }
  out.precision(old_precision);
}

nlohmann::json grid_manifest(const ValueGrid& grid, const ControlField& field, double rho) {
  const MovingSet& set = *grid.set;
  nlohmann::json j;
  j["dimension"] = grid.dimension;
  j["autonomous"] = grid.autonomous;
  j["grid"] = {{"dx", grid.params.dx},
               {"dt", grid.params.dt},
               {"lower", std::vector<double>(grid.lower.data(), grid.lower.data() + grid.dimension)},
               {"counts", std::vector<int>(grid.counts.begin(), grid.counts.begin() + grid.dimension)},
               {"slices", grid.slices()},
               {"t_end", grid.times.back()},
               {"control_samples", grid.params.control_samples}};
  auto finite_or_null = [](double v) -> nlohmann::json {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  j["constants"] = {{"r", finite_or_null(set.prox_radius())},
                    {"L_C", set.lipschitz()},
                    {"M", field.bound()},
                    {"L_G", field.lipschitz()},
                    {"rho", rho},
                    {"t_max", finite_or_null(set.t_max())}};
  j["tolerances"] = {{"membership", kMembershipTol},
                     {"cone_angle", kConeAngleTol},
                     {"value_iteration", grid.params.vi_tol},
                     {"max_iterations", grid.params.max_iterations}};
  j["result"] = {{"iterations", grid.iterations},
                 {"final_change", finite_or_null(grid.final_change)}};
  std::size_t counts[4] = {0, 0, 0, 0};
  for (NodeStatus s : grid.status) ++counts[static_cast<int>(s)];
  j["status_counts"] = {{"TARGET", counts[0]},
                        {"REACHED", counts[1]},
                        {"UNREACHED", counts[2]},
                        {"OUTSIDE_C", counts[3]}};
  return j;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

namespace {

struct SegmentRun {
  double t = 0.0;
  Point x;
  std::optional<double> hit;
  long steps = 0;
};

SegmentRun RunSegment(const MovingSet& set, const ControlField& field, const TargetSet& target,
                      int control, int ball_samples, double t, const Point& x, double duration,
                      double h) {
  SegmentRun run;
  Policy policy = [&field, control, ball_samples](double s, const Point& y) {
    return field.extreme_points(s, y, ball_samples)[static_cast<std::size_t>(control)];
  };
  SimulationOptions sim;
  sim.h = h;
  sim.horizon = duration;
  const TrajectoryRecord rec = simulate(set, field, policy, t, x, target, sim);
  run.t = rec.times.back();
  run.x = rec.states.back();
  run.hit = rec.hit_time;
  run.steps = static_cast<long>(rec.times.size()) - 1;
  return run;
}

}  // namespace

OracleResult oracle_mintime(const MovingSet& set, const ControlField& field,
                            const TargetSet& target, double t0, const Point& x0,
                            const OracleOptions& options) {
  if (options.segments < 1 || !(options.h > 0.0) || !(options.horizon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "oracle needs segments >= 1, h > 0, horizon > 0");
  }
  t0 = set.check_time(t0);
  if (!contains(set, t0, x0)) throw Error(ErrorCode::kNotInSet, "oracle start not in C(t0)");
  OracleResult best;
  if (signed_distance(target, x0) <= kMembershipTol) {
    best.time = 0.0;
    return best;
  }
  const double t_stop = std::min(t0 + options.horizon, set.t_max());
  const double tau = options.segment_duration > 0.0 ? options.segment_duration
                                                     : (t_stop - t0) / options.segments;
  const int n_controls =
      static_cast<int>(field.extreme_points(t0, x0, options.ball_samples).size());
  long steps = 0;
  auto charge = [&](long s) {
    steps += s;
    if (steps > options.step_budget) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "oracle exceeded its budget of " + std::to_string(options.step_budget) + " steps");
    }
  };

  std::vector<int> seq;
  std::vector<double> durations;
  std::function<void(int, double, const Point&)> dfs = [&](int seg, double t, const Point& x) {
    const bool last = seg + 1 == options.segments;
    for (int c = 0; c < n_controls; ++c) {
      const double duration = last ? t_stop - t : std::min(tau, t_stop - t);
      if (duration <= 0.0) return;
      const SegmentRun run =
          RunSegment(set, field, target, c, options.ball_samples, t, x, duration, options.h);
      charge(run.steps);
      seq.push_back(c);
      durations.push_back(run.t - t);
      if (run.hit) {
        if (*run.hit - t0 < best.time) {
          best.time = *run.hit - t0;
          best.controls = seq;
          best.durations = durations;
          best.durations.back() = *run.hit - t;
        }
      } else if (!last && run.t - t0 < best.time && run.t < t_stop) {
        dfs(seg + 1, run.t, run.x);
      }
      seq.pop_back();
      durations.pop_back();
    }
  };
  dfs(0, t0, x0);

  // Local search on the switching times of the incumbent.
  auto evaluate = [&](const std::vector<double>& d) -> double {
    double t = t0;
    Point x = x0;
    for (std::size_t k = 0; k < best.controls.size(); ++k) {
      const bool last = k + 1 == best.controls.size();
      const double duration = last ? t_stop - t : std::min(d[k], t_stop - t);
      if (duration <= 0.0) {
        if (last) return kInf;
        continue;
      }
      const SegmentRun run = RunSegment(set, field, target, best.controls[k],
                                        options.ball_samples, t, x, duration, options.h);
      charge(run.steps);
      if (run.hit) return *run.hit - t0;
      t = run.t;
      x = run.x;
    }
    return kInf;
  };
  if (std::isfinite(best.time) && best.controls.size() > 1) {
    double delta = 0.5 * tau;
    for (int round = 0; round < options.refine_rounds && delta >= options.h; ++round) {
      for (std::size_t k = 0; k + 1 < best.controls.size(); ++k) {
        for (double sign : {-1.0, 1.0}) {
          std::vector<double> trial = best.durations;
          trial[k] = std::max(0.0, trial[k] + sign * delta);
          const double value = evaluate(trial);
          if (value < best.time - 1e-12) {
            best.time = value;
            best.durations = trial;
          }
        }
      }
      delta *= 0.5;
    }
  }
  best.steps = steps;
  return best;
}

// ---------------------------------------------------------------------------
// Petrov diagnostics

double default_modulus_K(const MovingSet& set, const ControlField& field) {
  return set.dimension() * field.lipschitz() + 1.0 / set.prox_radius();
}

PetrovReport petrov_check(const MovingSet& set, const ControlField& field, const TargetSet& target,
                          const PetrovOptions& options) {
  PetrovReport report;
  report.delta = options.delta;
  report.L = options.L > 0.0 ? options.L : set.lipschitz() + field.bound();
  report.mu = options.mu;
  const double L = report.L;
  const int n = set.dimension();

  std::mt19937_64 rng(options.seed);
  std::vector<std::pair<double, Point>> points = options.probes;
  const double t_hi = std::isfinite(set.t_max()) ? set.t_max() : 1.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < options.samples; ++k) {
    const double t = set.is_static() ? 0.0 : t_hi * unit(rng);
    const Point x = unit(rng) < 0.3 ? random_boundary_point(set, t, rng) : random_point_in(set, t, rng);
    points.emplace_back(t, x);
  }

  std::normal_distribution<double> normal;
  for (const auto& [t, x] : points) {
    const double d_s = distance(target, x);
    if (d_s <= kMembershipTol) {
      ++report.excluded;
      continue;
    }
    // Neighbours (s, y) in graph(C) within delta of (t, x).
    std::vector<std::pair<double, Point>> near = {{t, x}};
    for (int k = 0; k < options.neighbors; ++k) {
      Covector dir(n + 1);
      for (int i = 0; i <= n; ++i) dir[i] = normal(rng);
      dir *= options.delta * unit(rng) / dir.norm();
      double s = t;
      if (!set.is_static()) s = std::clamp(t + dir[0], 0.0, set.t_max());
      Point y = x + dir.tail(n);
      try {
        if (distance(set, s, y) > 0.0) y = project(set, s, y);
      } catch (const Error&) {
        continue;
      }
      const double gap = std::hypot(s - t, (y - x).norm());
      if (gap <= options.delta) near.emplace_back(s, y);
    }
    std::vector<std::pair<double, Point>> normals = {{t, Point::Zero(n)}};
    for (const auto& [s, y] : near) {
      for (const Point& gen : normal_generators(set, s, y)) {
        normals.emplace_back(s, 0.5 * L * gen);
        normals.emplace_back(s, L * gen);
      }
    }
    // Record which neighbour produced each normal sample.
    std::vector<Point> origin_y;
    for (const auto& [s, y] : near) {
      const std::size_t gens = normal_generators(set, s, y).size();
      for (std::size_t k = 0; k < 2 * gens; ++k) origin_y.push_back(y);
    }
    const double mu = options.mu(d_s);
    PetrovPoint best;
    best.t = t;
    best.x = x;
    best.d_S = d_s;
    best.margin = kInf;
    for (const Point& v : field.extreme_points(t, x, options.ball_samples)) {
      for (const Point& xi : target_superdifferential(target, x)) {
        double worst = -kInf;
        std::size_t worst_k = 0;
        for (std::size_t k = 0; k < normals.size(); ++k) {
          const double m = (v - normals[k].second).dot(xi) + mu;
          if (m > worst) {
            worst = m;
            worst_k = k;
          }
        }
        if (worst < best.margin) {
          best.margin = worst;
          best.v_bar = v;
          best.xi_bar = xi;
          best.worst_s = normals[worst_k].first;
          best.worst_p = normals[worst_k].second;
          best.worst_y = worst_k == 0 ? x : origin_y[worst_k - 1];
        }
      }
    }
    report.pass = report.pass && best.margin <= 0.0;
    report.points.push_back(std::move(best));
  }
  return report;
}

namespace {

std::vector<double> ToVector(const Point& p) { return std::vector<double>(p.data(), p.data() + p.size()); }

}  // namespace

nlohmann::json to_json(const PetrovReport& report) {
  nlohmann::json j;
  j["pass"] = report.pass;
  j["delta"] = report.delta;
  j["L"] = report.L;
  j["mu"] = report.mu.to_json();
  j["excluded"] = report.excluded;
  nlohmann::json pts = nlohmann::json::array();
  for (const PetrovPoint& p : report.points) {
    pts.push_back({{"t", p.t},
                   {"x", ToVector(p.x)},
                   {"d_S", p.d_S},
                   {"v_bar", ToVector(p.v_bar)},
                   {"xi_bar", ToVector(p.xi_bar)},
                   {"margin", p.margin},
                   {"worst_s", p.worst_s},
                   {"worst_y", ToVector(p.worst_y)},
                   {"worst_p", ToVector(p.worst_p)}});
  }
  j["points"] = std::move(pts);
  return j;
}

}  // namespace moreau
