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

#include "doctest.h"
#include "moreau/scenarios.hpp"

using namespace moreau;

namespace {

const double kLog3 = std::log(3.0);
const double kSqrt2 = std::numbers::sqrt2;

}  // namespace

TEST_CASE("example 2 reference functions") {
  CHECK(example2_T1(0.8) == doctest::Approx(0.5 * (1.2 - std::sqrt(0.56))).epsilon(1e-14));
  CHECK(example2_T2(1.0) == doctest::Approx(0.62322524014).epsilon(1e-10));
  CHECK(example2_T3(1.0) == doctest::Approx(3.3303320213).epsilon(1e-10));
  CHECK(example2_T3(2.0 - kSqrt2) == doctest::Approx(2.0 + kSqrt2).epsilon(1e-12));
  CHECK(example2_T2(2.0 - kSqrt2) == doctest::Approx(0.0).epsilon(1e-12));
  for (double y0 : {0.5, 1.2, 2.0}) {
    try {
      example2_T1(y0);
      FAIL("expected DomainError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDomainError);
    }
  }
}

TEST_CASE("example 1 exact values") {
  CHECK(example1_exact_T(0.0, -1.0) == doctest::Approx(1.0 + kLog3));
  CHECK(example1_exact_T(0.0, 0.0) == doctest::Approx(kLog3));
  CHECK(example1_exact_T(1.0, 0.0) == doctest::Approx(kLog3));
  for (double t : {0.0, 1.0, 2.5}) CHECK(example1_exact_T(t, 2.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(example1_exact_T(1.0, -0.5), Error);
}

TEST_CASE("example 1 branches agree on the switching curve") {
  for (int k = 0; k < 50; ++k) {
    const double t = k / 49.0;
    const double x = std::exp(t - 1.0) - 1.0;
    CHECK(std::abs((1.0 + kLog3 - t) - (kLog3 - std::log(1.0 + x))) <= 1e-12);
    CHECK(std::abs(example1_exact_T(t, x) - (1.0 + kLog3 - t)) <= 1e-12);
    CHECK_FALSE(example1_gradient(t, x).has_value());
  }
}

TEST_CASE("example 2 exact values") {
  CHECK(example2_exact_T(5.0, 0.0) == doctest::Approx(4.0));
  CHECK(example2_exact_T(0.3, 3.0) == doctest::Approx(1.0));
  CHECK(example2_exact_T(0.5 * kSqrt2, 2.0 - 0.5 * kSqrt2) == doctest::Approx(2.0 + 0.5 * kSqrt2));
  CHECK(example2_exact_T(0.0, 4.0) == 0.0);
  CHECK_THROWS_AS(example2_exact_T(0.0, 2.0), Error);
  CHECK_THROWS_AS(example2_exact_T(6.0, 2.0), Error);
}

TEST_CASE("example 2 symmetry and the symmetry axis") {
  for (double x : {0.05, 0.2, 0.4, 0.6, 1.5, 3.0}) {
    for (double y : {0.1, 0.7, 0.9, 3.5}) {
      CHECK(example2_exact_T(x, y) == example2_exact_T(-x, y));
    }
  }
  for (int k = 1; k <= 20; ++k) {
    const double y0 = 2.0 - kSqrt2 + k * (kSqrt2 - 1.0) / 20.0;
    CHECK(example2_in_D(0.0, y0 - 1e-3) == (y0 - 1e-3 > 2.0 - kSqrt2));
    CHECK(example2_exact_T(0.0, y0) == doctest::Approx(example2_T3(y0)).epsilon(1e-12));
  }
}

TEST_CASE("example 2 gradient inside D") {
  for (double x : {0.05, 0.15, 0.3}) {
    for (double dy : {0.05, 0.1}) {
      const double y = x + 2.0 - kSqrt2 + dy;
      if (!example2_in_D(x, y)) continue;
      const auto g = example2_gradient(x, y);
      REQUIRE(g.has_value());
      CHECK((*g)[0] + (*g)[1] == doctest::Approx(-1.0).epsilon(1e-12));
      const double h = 1e-6;
      const double fx = (example2_exact_T(x + h, y) - example2_exact_T(x - h, y)) / (2.0 * h);
      const double fy = (example2_exact_T(x, y + h) - example2_exact_T(x, y - h)) / (2.0 * h);
      CHECK(std::abs(fx - (*g)[0]) <= 1e-5);
      CHECK(std::abs(fy - (*g)[1]) <= 1e-5);
    }
  }
}

TEST_CASE("T3 derivative") {
  for (int k = 1; k < 20; ++k) {
    const double y0 = 2.0 - kSqrt2 + k * (kSqrt2 - 1.0) / 20.0;
    const double h = 1e-6;
    const double fd = (example2_T3(y0 + h) - example2_T3(y0 - h)) / (2.0 * h);
    CHECK(std::abs(fd - example2_T3_prime(y0)) <= 1e-5);
    CHECK(example2_T3_prime(y0) <= 0.0);
    CHECK(example2_T3_prime(y0) > -0.5);
  }
  CHECK(example2_T3_prime(2.0 - kSqrt2 + 1e-12) == doctest::Approx(-0.5).epsilon(1e-4));
}

TEST_CASE("difference quotients stay bounded near the corner of D") {
  const double px = 0.5 * kSqrt2;
  const double py = 2.0 - 0.5 * kSqrt2;
  const double tp = example2_exact_T(px, py);
  for (double r : {1e-2, 1e-3, 1e-4, 1e-5}) {
    for (double a = 0.0; a < 2.0 * std::numbers::pi; a += 0.25) {
      const double x = px + r * std::cos(a);
      const double y = py + r * std::sin(a);
      if (std::hypot(x, y - 2.0) < 1.0) continue;
      CHECK(std::abs(example2_exact_T(x, y) - tp) / r <= 2.0);
    }
  }
}

TEST_CASE("scenario lookup") {
  CHECK(scenario_by_name("example1").name == "example1");
  CHECK(scenario_by_name("example2").rho == doctest::Approx(kSqrt2));
  try {
    scenario_by_name("example3");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
  }
}

TEST_CASE("feature probes lie in the graph") {
  for (const ScenarioBundle& s : {example1(), example2()}) {
    CHECK_FALSE(s.features.empty());
    for (const SingularFeature& f : s.features) {
      CHECK_FALSE(f.probes.empty());
      for (const auto& [t, x] : f.probes) CHECK(contains(s.set, t, x, 1e-9));
    }
  }
}
