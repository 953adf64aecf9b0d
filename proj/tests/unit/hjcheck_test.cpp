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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "moreau/hjcheck.hpp"
#include "moreau/scenarios.hpp"

using namespace moreau;

namespace {

const double kLog3 = std::log(3.0);
const double kSqrt2 = std::numbers::sqrt2;

bool SameCovector(const Covector& a, const Covector& b) {
  return a.size() == b.size() && (a - b).norm() <= 1e-9 * std::max(1.0, b.norm());
}

bool ContainsDirection(const std::vector<Covector>& list, const Covector& c) {
  for (const Covector& v : list) {
    if (v.size() == c.size() && (v / v.norm() - c / c.norm()).norm() <= 1e-6) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("hamiltonian hand values at (0, -1, 1 + log 3)") {
  const ScenarioBundle s = example1();
  const AugmentedPoint pt{0.0, MakePoint({-1.0}), 1.0 + kLog3};
  CHECK(hamiltonian_plus(s.set, s.field, pt, MakeCovector({0, -1, 0}), 4.0) == doctest::Approx(-2.0));
  CHECK(hamiltonian_plus(s.set, s.field, pt, MakeCovector({1, -1, 0}), 4.0) == doctest::Approx(-1.0));
  // p_x = 0 removes the normal-cone term: -1 + 0 + 1.
  CHECK(hamiltonian_minus(s.set, s.field, pt, MakeCovector({-1, 0, -1}), 4.0) ==
        doctest::Approx(0.0));
  CHECK(hamiltonian_plus(s.set, s.field, pt, MakeCovector({0, 0, 0}), 4.0) == 0.0);
  CHECK_THROWS_AS(hamiltonian_plus(s.set, s.field, AugmentedPoint{1.0, MakePoint({-1.0}), 0.0},
                                   MakeCovector({0, 1, 0}), 4.0),
                  Error);
}

TEST_CASE("hamiltonian at interior points") {
  const ScenarioBundle s = example1();
  const AugmentedPoint interior{1.5, MakePoint({1.0}), 0.0};
  CHECK(hamiltonian_minus(s.set, s.field, interior, MakeCovector({0.3, 0.7, -1}), 4.0) ==
        doctest::Approx(1.3));
  // The interior PDE: dT/dt + min_w w dT/dx + 1 = 0.
  const AugmentedPoint smooth{0.5, MakePoint({1.0}), example1_exact_T(0.5, 1.0)};
  const Covector grad = *example1_gradient(0.5, 1.0);
  const Covector p = MakeCovector({grad[0], grad[1], -1.0});
  CHECK(std::abs(hamiltonian_minus(s.set, s.field, smooth, p, 4.0)) <= 1e-12);
  CHECK(std::abs(hamiltonian_minus(s.set, s.field, smooth, p, 4.0) +
                 hamiltonian_plus(s.set, s.field, smooth, -p, 4.0)) <= 1e-12);
}

TEST_CASE("example 2 hand values") {
  const ScenarioBundle s = example2();
  const AugmentedPoint corner{0.0, MakePoint({5.0, 0.0}), 4.0};
  CHECK(hamiltonian_plus(s.set, s.field, corner, MakeCovector({0, 1, 0, 0}), s.rho) ==
        doctest::Approx(1.0 - kSqrt2));
  const double x = 0.4;
  const double y = 2.0 - std::sqrt(1.0 - x * x);
  const AugmentedPoint arc{0.0, MakePoint({x, y}), example2_exact_T(x, y)};
  CHECK(hamiltonian_minus(s.set, s.field, arc, MakeCovector({0, -x, 2.0 - y, 0}), s.rho) ==
        doctest::Approx(-kSqrt2));
}

TEST_CASE("structural properties of the hamiltonians") {
  const ScenarioBundle s = example2();
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < 300; ++k) {
    const double a = angle(rng);
    const AugmentedPoint pt{0.0, MakePoint({std::cos(a), 2.0 + std::sin(a)}), 1.0};
    const Covector p = MakeCovector({0.0, normal(rng), normal(rng), normal(rng)});
    const double hm = hamiltonian_minus(s.set, s.field, pt, p, s.rho);
    const double hp = hamiltonian_plus(s.set, s.field, pt, p, s.rho);
    CHECK(hm <= hp + 1e-12);
    CHECK(hamiltonian_minus(s.set, s.field, pt, 2.5 * p, s.rho) == doctest::Approx(2.5 * hm));
    CHECK(hamiltonian_plus(s.set, s.field, pt, 2.5 * p, s.rho) == doctest::Approx(2.5 * hp));
    // The normal-cone summand is never positive.
    const double g_term = p[0] + s.field.min_dot(0.0, pt.x, p.segment(1, 2)) - p[3];
    CHECK(hm <= g_term + 1e-12);
  }
}

TEST_CASE("epigraph and hypograph normals") {
  const ScenarioBundle s = example1();
  const CandidateValueFunction& T = *s.exact_T;
  const AugmentedPoint corner{0.0, MakePoint({-1.0}), 1.0 + kLog3};
  const auto epi = epi_normals(T, s.set, corner);
  const auto hypo = hypo_normals(T, s.set, corner);
  for (const Covector& c : {MakeCovector({0, -1, 0}), MakeCovector({1, -1, 0}),
                            MakeCovector({-1, 0, -1})}) {
    CHECK(ContainsDirection(epi, c));
  }
  for (const Covector& c : {MakeCovector({0, -1, 0}), MakeCovector({1, -1, 0}),
                            MakeCovector({1, 0, 1})}) {
    CHECK(ContainsDirection(hypo, c));
  }
  const double t5 = 0.5;
  const double x5 = std::exp(t5 - 1.0) - 1.0;
  CHECK(epi_normals(T, s.set, AugmentedPoint{t5, MakePoint({x5}), example1_exact_T(t5, x5)}).empty());

  // Without tables the smooth interior normal comes from differences.
  CandidateValueFunction plain;
  plain.value = T.value;
  const AugmentedPoint smooth{0.5, MakePoint({1.0}), example1_exact_T(0.5, 1.0)};
  const auto numeric = epi_normals(plain, s.set, smooth);
  REQUIRE(numeric.size() == 1);
  CHECK(ContainsDirection(numeric, MakeCovector({0.0, -0.5, -1.0})));
  CHECK_FALSE(is_horizontal(numeric[0]));
  const auto numeric_hypo = hypo_normals(plain, s.set, smooth);
  REQUIRE(numeric_hypo.size() == 1);
  CHECK(ContainsDirection(numeric_hypo, MakeCovector({0.0, 0.5, 1.0})));

  CHECK_THROWS_AS(epi_normals(T, s.set, AugmentedPoint{0.5, MakePoint({1.0}), 7.0}), Error);

  const ScenarioBundle e2 = example2();
  const double x = 0.3;
  const double y = 2.0 - std::sqrt(1.0 - x * x);
  const auto arc_hypo =
      hypo_normals(*e2.exact_T, e2.set, AugmentedPoint{0.0, MakePoint({x, y}), example2_exact_T(x, y)});
  CHECK(ContainsDirection(arc_hypo, MakeCovector({0.0, -x, 2.0 - y, 0.0})));
}

TEST_CASE("verification of the exact value functions") {
  for (const ScenarioBundle& s : {example1(), example2()}) {
    const HamiltonianReport r =
        verify_candidate(s.set, s.field, s.target, *s.exact_T, verification_plan(s));
    CHECK(r.pass);
    CHECK(r.max_violation <= 1e-9);
    CHECK(r.rho == s.rho);
  }
}

TEST_CASE("verification rejects the bump candidate") {
  const ScenarioBundle s = example1();
  const HamiltonianReport r = verify_candidate(s.set, s.field, s.target,
                                               example1_bump_candidate(0.1), verification_plan(s));
  CHECK_FALSE(r.pass);
  REQUIRE(r.worst.has_value());
  CHECK(r.records[*r.worst].value > 0.0);
  bool plus_witness = false;
  for (const HamiltonianRecord& rec : r.records) {
    plus_witness |= rec.kind == Inequality::kPlus && !rec.pass && rec.value > 0.0;
  }
  CHECK(plus_witness);
}

TEST_CASE("sign condition") {
  const ScenarioBundle s = example1();
  CandidateValueFunction shifted;
  shifted.value = [](double t, const Point& x) { return example1_exact_T(t, x[0]) + 1.0; };
  try {
    verify_candidate(s.set, s.field, s.target, shifted, verification_plan(s));
    FAIL("expected SignConditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSignConditionFailed);
  }
}

TEST_CASE("reports are independent of the worker count") {
  const ScenarioBundle s = example2();
  VerifyOptions options;
  options.workers = 1;
  const SamplePlan plan = verification_plan(s);
  const auto a = verify_candidate(s.set, s.field, s.target, *s.exact_T, plan, options);
  options.workers = 3;
  const auto b = verify_candidate(s.set, s.field, s.target, *s.exact_T, plan, options);
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("combined hypograph normals on the upper arc") {
  // Generators pass one by one, but H+ is convex in p and a combination of
  // the gradient normal with the constraint normal violates it.
  const ScenarioBundle s = example2();
  const double theta = std::numbers::pi / 8;
  const Point x = MakePoint({std::cos(theta), 2.0 + std::sin(theta)});
  const AugmentedPoint pt{0.0, x, example2_exact_T(x[0], x[1])};
  const auto hypo = hypo_normals(*s.exact_T, s.set, pt);
  for (const Covector& p : hypo) CHECK(hamiltonian_plus(s.set, s.field, pt, p, s.rho) <= 1e-12);
  const Point n = normal_generators(s.set, 0.0, x).front();
  const Covector combo = MakeCovector({0.0, std::sin(theta) * n[0], 1.0 + std::sin(theta) * n[1], 1.0});
  CHECK(hamiltonian_plus(s.set, s.field, pt, combo, s.rho) ==
        doctest::Approx(std::sin(theta) * (std::cos(theta) - std::sin(theta))));
}

TEST_CASE("invariance checks on example 1") {
  const ScenarioBundle s = example1();
  const std::vector<double> times = {0.0, 0.5, 1.0, 1.5};
  auto weak = [&](const StaticSet& K) {
    return weak_invariance_check(s.set, s.field, K, invariance_plan(s.set, K, times, 8));
  };
  auto strong = [&](const StaticSet& K) {
    return strong_invariance_check(s.set, s.field, K, invariance_plan(s.set, K, times, 8));
  };
  CHECK(weak(StaticSet::WholeSpace(1)).pass);
  CHECK(strong(StaticSet::WholeSpace(1)).pass);
  CHECK(weak(StaticSet::HalfSpace(1, 0, 2.0, false)).pass);
  CHECK(strong(StaticSet::HalfSpace(1, 0, 2.0, false)).pass);
  CHECK(weak(StaticSet::HalfSpace(1, 0, 1.9, true)).pass);
  const auto weak_fail = weak(StaticSet::HalfSpace(1, 0, 1.5, false));
  CHECK_FALSE(weak_fail.pass);
  CHECK(weak_fail.max_violation > 0.0);
  const auto strong_fail = strong(StaticSet::HalfSpace(1, 0, 0.0, false));
  CHECK_FALSE(strong_fail.pass);
  CHECK(strong_fail.max_violation == doctest::Approx(1.0));
  try {
    weak(StaticSet::HalfSpace(1, 0, 5.0, true));
    FAIL("expected EmptyIntersection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyIntersection);
  }
}

TEST_CASE("grid plan") {
  const ScenarioBundle s = example1();
  const SamplePlan plan = grid_plan(s.set, 4, 0.5);
  CHECK_FALSE(plan.points.empty());
  for (const auto& [t, x] : plan.points) CHECK(contains(s.set, t, x));
}
