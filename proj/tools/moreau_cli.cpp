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

// moreau: command-line front end for simulation, minimum-time solves and
// Hamilton-Jacobi verification.
//
// Exit status: 0 on success, 1 when a verification fails, 2 on a
// configuration error.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "moreau/config.hpp"
#include "moreau/dynamics.hpp"
#include "moreau/hjcheck.hpp"
#include "moreau/scenarios.hpp"
#include "moreau/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace moreau;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string scenario = "example1";
  std::optional<std::string> out;
  int workers = 1;
  std::uint64_t seed = 1;
};

std::vector<double> ParseList(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfigError, what + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw Error(ErrorCode::kConfigError, what + ": empty list");
  return out;
}

Point ToPoint(const std::vector<double>& v, std::size_t begin, int dim, const std::string& what) {
  if (v.size() != begin + static_cast<std::size_t>(dim)) {
    std::ostringstream os;
    os << what << ": expected " << begin + dim << " values, got " << v.size();
    throw Error(ErrorCode::kConfigError, os.str());
  }
  Point p(dim);
  for (int i = 0; i < dim; ++i) p[i] = v[begin + static_cast<std::size_t>(i)];
  return p;
}

// "t,x1,...,xn" for time-dependent sets; the time may be omitted for static ones.
std::pair<double, Point> ParseProbe(const std::string& text, const MovingSet& set,
                                    const std::string& what) {
  const std::vector<double> v = ParseList(text, what);
  const int n = set.dimension();
  if (set.is_static() && static_cast<int>(v.size()) == n) return {0.0, ToPoint(v, 0, n, what)};
  return {v.front(), ToPoint(v, 1, n, what)};
}

Modulus ParseModulus(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "const") {
    const auto v = ParseList(rest, "--mu");
    if (v.size() != 1) throw Error(ErrorCode::kConfigError, "--mu const:c takes one value");
    return Modulus::Constant(v[0]);
  }
  if (kind == "power") {
    const auto v = ParseList(rest, "--mu");
    if (v.size() != 2) throw Error(ErrorCode::kConfigError, "--mu power:c,a takes two values");
    return Modulus::Power(v[0], v[1]);
  }
  if (kind == "table") {
    std::vector<std::pair<double, double>> pts;
    std::stringstream ss(rest);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
      const auto c = pair.find(':');
      if (c == std::string::npos) {
        throw Error(ErrorCode::kConfigError, "--mu table entries are r:mu, got '" + pair + "'");
      }
      pts.emplace_back(ParseList(pair.substr(0, c), "--mu").at(0),
                       ParseList(pair.substr(c + 1), "--mu").at(0));
    }
    return Modulus::Table(std::move(pts));
  }
  throw Error(ErrorCode::kConfigError,
              "--mu must be const:c, power:c,a or table:r:mu,...; got '" + text + "'");
}

fs::path PrepareOut(const Common& common) {
  const fs::path dir = output_directory(common.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kConfigError, "cannot create '" + dir.string() + "'");
  return dir;
}

void WriteJson(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kConfigError, "cannot write '" + path.string() + "'");
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string policy = "u=1";
  std::string from;
  double h = 1e-3;
  double horizon = 10.0;
  std::string integrator = "catching-up";
  double dx = 5e-3;
  double dt = 2.5e-3;
};

int RunSimulate(const Common& common, const SimulateArgs& args) {
  const ScenarioBundle s = resolve_scenario(common.scenario);
  const auto [t0, x0] = ParseProbe(args.from, s.set, "--from");
  SimulationOptions options;
  options.h = args.h;
  options.horizon = args.horizon;
  if (args.integrator == "catching-up") {
    options.integrator = Integrator::kCatchingUp;
  } else if (args.integrator == "subdifferential") {
    options.integrator = Integrator::kSubdifferential;
  } else if (args.integrator == "projected") {
    options.integrator = Integrator::kProjected;
  } else {
    throw Error(ErrorCode::kConfigError, "--integrator must be catching-up, subdifferential or "
                                         "projected");
  }

  std::optional<ValueGrid> grid;
  Policy policy;
  const int n = s.set.dimension();
  if (args.policy.rfind("u=", 0) == 0) {
    policy = ConstantOffsetPolicy(s.field, ToPoint(ParseList(args.policy.substr(2), "--policy"),
                                                   0, n, "--policy"));
  } else if (args.policy.rfind("vertex=", 0) == 0) {
    const double k = ParseList(args.policy.substr(7), "--policy").at(0);
    if (s.field.kind() != ControlField::Kind::kPolytope || k < 0 ||
        k >= static_cast<double>(s.field.offsets().size()) || k != std::floor(k)) {
      throw Error(ErrorCode::kConfigError, "--policy vertex=k: no such vertex");
    }
    policy = ConstantOffsetPolicy(s.field, s.field.offsets()[static_cast<std::size_t>(k)]);
  } else if (args.policy == "greedy") {
    GridParams params;
    params.dx = args.dx;
    params.dt = args.dt;
    params.workers = common.workers;
    grid = solve_mintime(s.set, s.field, s.target, params);
    policy = greedy_policy(*grid, s.field, s.target);
  } else {
    throw Error(ErrorCode::kConfigError, "--policy must be u=<offset>, vertex=<k> or greedy");
  }

  const TrajectoryRecord rec = simulate(s.set, s.field, policy, t0, x0, s.target, options);
  const fs::path dir = PrepareOut(common);
  std::ofstream csv(dir / "trajectory.csv");
  write_trajectory_csv(csv, rec, s.set, s.target);
  std::cout << std::setprecision(10);
  if (rec.hit_time) {
    std::cout << "hit_time " << *rec.hit_time << "\n";
  } else {
    std::cout << "hit_time none (horizon " << (rec.horizon_exceeded ? "exceeded" : "clipped")
              << ")\n";
  }
  std::cout << "steps " << rec.times.size() - 1 << "\nmax_violation " << rec.max_violation
            << "\ntrajectory " << (dir / "trajectory.csv").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct MintimeArgs {
  double dx = 5e-3;
  double dt = 2.5e-3;
  double vi_tol = 1e-9;
  long max_iterations = 1000000;
  int control_samples = 16;
  std::optional<double> t_end;
  std::optional<double> K;
  double K_prime = 1.0;
  std::vector<std::string> probes;
};

int RunMintime(const Common& common, const MintimeArgs& args) {
  const ScenarioBundle s = resolve_scenario(common.scenario);
  GridParams params;
  params.dx = args.dx;
  params.dt = args.dt;
  params.vi_tol = args.vi_tol;
  params.max_iterations = args.max_iterations;
  params.control_samples = args.control_samples;
  params.workers = common.workers;
  params.t_end = args.t_end;
  const auto start = std::chrono::steady_clock::now();
  const ValueGrid grid = solve_mintime(s.set, s.field, s.target, params);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const fs::path dir = PrepareOut(common);
  {
    std::ofstream csv(dir / "grid.csv");
    write_grid_csv(csv, grid);
  }
  json manifest = grid_manifest(grid, s.field, s.rho);
  manifest["scenario"] = s.name;
  manifest["constants"]["K"] = args.K.value_or(default_modulus_K(s.set, s.field));
  manifest["constants"]["K_prime"] = args.K_prime;
  WriteJson(dir / "manifest.json", manifest);
  WriteJson(dir / "timing.json", {{"wall_seconds", wall}, {"workers", common.workers}});

  std::cout << std::setprecision(10) << "iterations " << grid.iterations << "\nwall_seconds "
            << wall << "\n";
  for (const std::string& text : args.probes) {
    const auto [t, x] = ParseProbe(text, s.set, "--probe");
    std::cout << "T(" << text << ") = " << mintime_at(grid, t, x) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct HjcheckArgs {
  std::string candidate = "exact";
  double tol = 1e-9;
  double rho = 0.0;
  double amplitude = 0.1;
  double dx = 0.02;
  double dt = 0.02;
  double spacing = 0.0;
  int nt = 31;
};

int RunHjcheck(const Common& common, const HjcheckArgs& args) {
  const ScenarioBundle s = resolve_scenario(common.scenario);
  CandidateValueFunction theta;
  std::optional<ValueGrid> grid;
  if (args.candidate == "exact") {
    if (!s.exact_T) throw Error(ErrorCode::kConfigError, "scenario has no closed-form value");
    theta = *s.exact_T;
  } else if (args.candidate == "bump") {
    if (s.name != "example1") {
      throw Error(ErrorCode::kConfigError, "--candidate bump is defined for example1");
    }
    theta = example1_bump_candidate(args.amplitude);
  } else if (args.candidate == "grid") {
    GridParams params;
    params.dx = args.dx;
    params.dt = args.dt;
    params.workers = common.workers;
    grid = solve_mintime(s.set, s.field, s.target, params);
    theta.value = [&grid](double t, const Point& x) { return mintime_at(*grid, t, x); };
  } else {
    throw Error(ErrorCode::kConfigError, "--candidate must be exact, bump or grid");
  }

  SamplePlan plan;
  if (args.spacing > 0.0) {
    plan = grid_plan(s.set, s.set.is_static() ? 1 : args.nt, args.spacing);
  } else {
    plan = verification_plan(s);
  }
  VerifyOptions options;
  options.tol = args.tol;
  options.rho = args.rho > 0.0 ? args.rho : s.rho;
  options.workers = common.workers;

  const fs::path dir = PrepareOut(common);
  try {
    const HamiltonianReport report = verify_candidate(s.set, s.field, s.target, theta, plan, options);
    json j = to_json(report);
    j["scenario"] = s.name;
    j["candidate"] = args.candidate;
    WriteJson(dir / "hjcheck_report.json", j);
    print_summary(std::cout, report);
    return report.pass ? kExitOk : kExitFailed;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSignConditionFailed) throw;
    WriteJson(dir / "hjcheck_report.json",
              {{"scenario", s.name}, {"candidate", args.candidate}, {"pass", false},
               {"error", e.what()}});
    std::cout << "FAIL " << e.what() << "\n";
    return kExitFailed;
  }
}

// ---------------------------------------------------------------------------

struct PetrovArgs {
  std::string mu = "const:0.5";
  double delta = 0.05;
  double L = 0.0;
  int samples = 100;
  int neighbors = 24;
  std::vector<std::string> probes;
  std::optional<double> K;
  double K_prime = 1.0;
  double T_bound = 1.0;
  double dx = 5e-3;
  double dt = 2.5e-3;
};

int RunPetrov(const Common& common, const PetrovArgs& args) {
  const ScenarioBundle s = resolve_scenario(common.scenario);
  PetrovOptions options;
  options.mu = ParseModulus(args.mu);
  options.delta = args.delta;
  options.L = args.L;
  options.samples = args.samples;
  options.neighbors = args.neighbors;
  options.seed = common.seed;
  for (const std::string& text : args.probes) options.probes.push_back(ParseProbe(text, s.set, "--probe"));
  const PetrovReport report = petrov_check(s.set, s.field, s.target, options);

  const double K = args.K.value_or(default_modulus_K(s.set, s.field));
  json j = to_json(report);
  j["scenario"] = s.name;
  j["modulus_bounds"] = {{"K", K},
                         {"K_prime", args.K_prime},
                         {"T_bound", args.T_bound},
                         {"dx", args.dx},
                         {"dt", args.dt}};
  try {
    j["modulus_bounds"]["continuity"] =
        continuity_modulus_bound(options.mu, K, args.T_bound, args.K_prime, args.dx, args.dt);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDivergentIntegral) throw;
    j["modulus_bounds"]["continuity"] = nullptr;
    j["modulus_bounds"]["error"] = e.what();
  }
  json reach = json::array();
  for (const PetrovPoint& p : report.points) {
    try {
      reach.push_back(reach_time_upper_bound(options.mu, p.d_S));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDivergentIntegral) throw;
      reach.push_back(nullptr);
    }
  }
  j["reach_time_upper_bounds"] = reach;
  const fs::path dir = PrepareOut(common);
  WriteJson(dir / "petrov_report.json", j);

  std::cout << std::setprecision(6) << "points " << report.points.size() << "  excluded "
            << report.excluded << "  " << (report.pass ? "PASS" : "FAIL") << "\n";
  for (const PetrovPoint& p : report.points) {
    std::cout << "  t=" << p.t << " x=(" << p.x.transpose() << ") d_S=" << p.d_S
              << " margin=" << p.margin << "\n";
  }
  // Margins are diagnostics, not a verification verdict.
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct InvarianceArgs {
  std::string mode = "weak";
  std::string K;
  std::vector<double> times;
  int per_time = 64;
  double tol = 1e-9;
};

int RunInvariance(const Common& common, const InvarianceArgs& args) {
  const ScenarioBundle s = resolve_scenario(common.scenario);
  const std::string text = fs::exists(args.K) ? [&] {
    std::ifstream in(args.K);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }()
                                              : args.K;
  const StaticSet K =
      parse_static_set(text, fs::exists(args.K) ? args.K : "--K", s.set.dimension());
  std::vector<double> times = args.times;
  if (times.empty()) times.push_back(0.0);
  const SamplePlan plan = invariance_plan(s.set, K, times, args.per_time);
  VerifyOptions options;
  options.tol = args.tol;
  options.workers = common.workers;
  HamiltonianReport report;
  if (args.mode == "weak") {
    report = weak_invariance_check(s.set, s.field, K, plan, options);
  } else if (args.mode == "strong") {
    report = strong_invariance_check(s.set, s.field, K, plan, options);
  } else {
    throw Error(ErrorCode::kConfigError, "--mode must be weak or strong");
  }
  json j = to_json(report);
  j["scenario"] = s.name;
  j["mode"] = args.mode;
  j["K"] = static_set_to_json(K);
  WriteJson(PrepareOut(common) / "invariance_report.json", j);
  print_summary(std::cout, report);
  return report.pass ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
  std::vector<std::string> probes;
  OracleOptions options;
};

int RunOracle(const Common& common, const OracleArgs& args) {
  const ScenarioBundle s = resolve_scenario(common.scenario);
  if (args.probes.empty()) throw Error(ErrorCode::kConfigError, "oracle needs at least one --probe");
  json results = json::array();
  std::cout << std::setprecision(10);
  for (const std::string& text : args.probes) {
    const auto [t, x] = ParseProbe(text, s.set, "--probe");
    const OracleResult r = oracle_mintime(s.set, s.field, s.target, t, x, args.options);
    json entry = {{"t", t},
                  {"x", std::vector<double>(x.data(), x.data() + x.size())},
                  {"time", std::isfinite(r.time) ? json(r.time) : json(nullptr)},
                  {"controls", r.controls},
                  {"durations", r.durations},
                  {"steps", r.steps}};
    if (s.exact_T) entry["exact_T"] = s.exact_T->value(t, x);
    results.push_back(entry);
    std::cout << "T_oracle(" << text << ") = " << r.time << "\n";
  }
  WriteJson(PrepareOut(common) / "oracle.json", {{"scenario", s.name}, {"probes", results}});
  return kExitOk;
}

int RunExport(const Common& common, bool to_stdout) {
  const ScenarioBundle s = resolve_scenario(common.scenario);
  const json j = scenario_to_json(s);
  if (to_stdout) {
    std::cout << j.dump(2) << "\n";
  } else {
    const fs::path path = PrepareOut(common) / (s.name + ".json");
    WriteJson(path, j);
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

void AddCommon(CLI::App* app, Common& common) {
  app->add_option("--scenario", common.scenario, "Built-in scenario name or scenario file")
      ->capture_default_str();
  app->add_option("--out", common.out, "Output directory (default $MOREAU_OUT_DIR or cwd)");
  app->add_option("--workers", common.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--seed", common.seed, "Random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled sweeping process: simulation, minimum time, HJ verification"};
  app.require_subcommand(1);
  Common common;

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate a trajectory and write CSV");
  AddCommon(simulate_cmd, common);
  simulate_cmd->add_option("--policy", sim.policy, "u=<offset>, vertex=<k> or greedy")
      ->capture_default_str();
  simulate_cmd->add_option("--from", sim.from, "Initial point t,x1,..,xn")->required();
  simulate_cmd->add_option("--step", sim.h, "Step size h")->check(CLI::PositiveNumber)->capture_default_str();
  simulate_cmd->add_option("--horizon", sim.horizon, "Time horizon")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate_cmd->add_option("--integrator", sim.integrator,
                           "catching-up, subdifferential or projected")
      ->capture_default_str();
  simulate_cmd->add_option("--dx", sim.dx, "Grid spacing for the greedy policy")
      ->capture_default_str();
  simulate_cmd->add_option("--dt", sim.dt, "Time step for the greedy policy")->capture_default_str();

  MintimeArgs mt;
  auto* mintime_cmd = app.add_subcommand("mintime", "Solve for the minimum-time function");
  AddCommon(mintime_cmd, common);
  mintime_cmd->add_option("--dx", mt.dx, "Space step")->check(CLI::PositiveNumber)->capture_default_str();
  mintime_cmd->add_option("--dt", mt.dt, "Time step")->check(CLI::PositiveNumber)->capture_default_str();
  mintime_cmd->add_option("--vi-tol", mt.vi_tol, "Value-iteration tolerance")->capture_default_str();
  mintime_cmd->add_option("--max-iterations", mt.max_iterations, "Value-iteration cap")
      ->capture_default_str();
  mintime_cmd->add_option("--control-samples", mt.control_samples, "Samples per ball control set")
      ->capture_default_str();
  mintime_cmd->add_option("--t-end", mt.t_end, "Final time of the recursion");
  mintime_cmd->add_option("--K", mt.K, "Modulus constant K (default n L_G + 1/r)");
  mintime_cmd->add_option("--K-prime", mt.K_prime, "Modulus constant K'")->capture_default_str();
  mintime_cmd->add_option("--probe", mt.probes, "Print T at t,x1,..,xn (repeatable)");

  HjcheckArgs hj;
  auto* hjcheck_cmd = app.add_subcommand("hjcheck", "Verify the Hamilton-Jacobi inequalities");
  AddCommon(hjcheck_cmd, common);
  hjcheck_cmd->add_option("--candidate", hj.candidate, "exact, bump or grid")->capture_default_str();
  hjcheck_cmd->add_option("--tol", hj.tol, "Inequality tolerance")->capture_default_str();
  hjcheck_cmd->add_option("--rho", hj.rho, "Normal truncation (default L_C + M)");
  hjcheck_cmd->add_option("--amplitude", hj.amplitude, "Bump amplitude")->capture_default_str();
  hjcheck_cmd->add_option("--dx", hj.dx, "Grid candidate space step")->capture_default_str();
  hjcheck_cmd->add_option("--dt", hj.dt, "Grid candidate time step")->capture_default_str();
  hjcheck_cmd->add_option("--spacing", hj.spacing,
                          "Lattice spacing of the probe plan (default: features plus lattice)");
  hjcheck_cmd->add_option("--nt", hj.nt, "Probe times for time-dependent sets")->capture_default_str();

  PetrovArgs pv;
  auto* petrov_cmd = app.add_subcommand("petrov", "Petrov-type decrease diagnostics");
  AddCommon(petrov_cmd, common);
  petrov_cmd->add_option("--mu", pv.mu, "const:c, power:c,a or table:r:mu,...")->capture_default_str();
  petrov_cmd->add_option("--delta", pv.delta, "Neighbourhood radius")->capture_default_str();
  petrov_cmd->add_option("--L", pv.L, "Normal truncation (default L_C + M)");
  petrov_cmd->add_option("--samples", pv.samples, "Random sample points")->capture_default_str();
  petrov_cmd->add_option("--neighbors", pv.neighbors, "Neighbours per point")->capture_default_str();
  petrov_cmd->add_option("--probe", pv.probes, "Extra point t,x1,..,xn (repeatable)");
  petrov_cmd->add_option("--K", pv.K, "Modulus constant K (default n L_G + 1/r)");
  petrov_cmd->add_option("--K-prime", pv.K_prime, "Modulus constant K'")->capture_default_str();
  petrov_cmd->add_option("--T-bound", pv.T_bound, "Bound on T in the modulus")->capture_default_str();
  petrov_cmd->add_option("--dx", pv.dx, "Grid spacing in the modulus")->capture_default_str();
  petrov_cmd->add_option("--dt", pv.dt, "Time step in the modulus")->capture_default_str();

  InvarianceArgs inv;
  auto* invariance_cmd = app.add_subcommand("invariance", "Weak or strong invariance of a set K");
  AddCommon(invariance_cmd, common);
  invariance_cmd->add_option("--mode", inv.mode, "weak or strong")->capture_default_str();
  invariance_cmd->add_option("--K", inv.K, "Set K as a JSON document or file")->required();
  invariance_cmd->add_option("--times", inv.times, "Probe times")->delimiter(',');
  invariance_cmd->add_option("--per-time", inv.per_time, "Boundary samples per time")
      ->capture_default_str();
  invariance_cmd->add_option("--tol", inv.tol, "Inequality tolerance")->capture_default_str();

  OracleArgs orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force minimum-time upper bounds");
  AddCommon(oracle_cmd, common);
  oracle_cmd->add_option("--probe", orc.probes, "Point t,x1,..,xn (repeatable)");
  oracle_cmd->add_option("--segments", orc.options.segments, "Control switches")->capture_default_str();
  oracle_cmd->add_option("--horizon", orc.options.horizon, "Search horizon")->capture_default_str();
  oracle_cmd->add_option("--step", orc.options.h, "Step size h")->capture_default_str();
  oracle_cmd->add_option("--step-budget", orc.options.step_budget, "Total step budget")
      ->capture_default_str();

  bool to_stdout = false;
  auto* export_cmd = app.add_subcommand("export-scenario", "Write a scenario file");
  AddCommon(export_cmd, common);
  export_cmd->add_flag("--stdout", to_stdout, "Print instead of writing a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate_cmd) return RunSimulate(common, sim);
    if (*mintime_cmd) return RunMintime(common, mt);
    if (*hjcheck_cmd) return RunHjcheck(common, hj);
    if (*petrov_cmd) return RunPetrov(common, pv);
    if (*invariance_cmd) return RunInvariance(common, inv);
    if (*oracle_cmd) return RunOracle(common, orc);
    if (*export_cmd) return RunExport(common, to_stdout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
