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
#include "moreau/geometry.hpp"
#include "moreau/scenarios.hpp"

using namespace moreau;

namespace {

MovingSet Ex1Set() { return MovingSet::Interval(-1.0, 1.0, 2.0, 0.0); }

MovingSet Ex2Set() {
  return MovingSet::BoxMinusBall(MakePoint({-5, 0}), MakePoint({5, 4}), MakePoint({0, 2}), 1.0);
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("distance on the built-in sets") {
  CHECK(distance(Ex1Set(), 0.0, MakePoint({3.0})) == doctest::Approx(1.0));
  CHECK(distance(Ex1Set(), 0.0, MakePoint({0.0})) == 0.0);
  CHECK(distance(Ex2Set(), 0.0, MakePoint({0.0, 2.0})) == doctest::Approx(1.0));
  CHECK(CodeOf([] { distance(Ex1Set(), 3.5, MakePoint({2.0})); }) == ErrorCode::kTimeOutOfDomain);
}

TEST_CASE("projection") {
  CHECK(project(Ex1Set(), 0.0, MakePoint({2.5}))[0] == doctest::Approx(2.0));
  const Point p = project(Ex2Set(), 0.0, MakePoint({0.0, 1.5}));
  CHECK(p[0] == doctest::Approx(0.0));
  CHECK(p[1] == doctest::Approx(1.0));
  CHECK(CodeOf([] { project(Ex2Set(), 0.0, MakePoint({0.0, 2.0})); }) == ErrorCode::kOutsideReach);
  const Point inside = MakePoint({3.0, 3.0});
  CHECK(project(Ex2Set(), 0.0, inside) == inside);
}

TEST_CASE("normal generators") {
  auto g = normal_generators(Ex1Set(), 0.0, MakePoint({-1.0}));
  REQUIRE(g.size() == 1);
  CHECK(g[0][0] == doctest::Approx(-1.0));
  CHECK(normal_generators(Ex1Set(), 0.0, MakePoint({0.0})).empty());

  const double x0 = 0.6;
  const double y0 = 2.0 - std::sqrt(1.0 - x0 * x0);
  g = normal_generators(Ex2Set(), 0.0, MakePoint({x0, y0}));
  REQUIRE(g.size() == 1);
  CHECK(g[0][0] == doctest::Approx(-x0));
  CHECK(g[0][1] == doctest::Approx(2.0 - y0));

  g = normal_generators(Ex2Set(), 0.0, MakePoint({5.0, 4.0}));
  CHECK(g.size() == 2);
  CHECK(CodeOf([] { normal_generators(Ex1Set(), 0.0, MakePoint({2.5})); }) ==
        ErrorCode::kNotInSet);
}

TEST_CASE("graph normals of a moving interval") {
  // Left face moves right at unit speed: generator (1, -1); initial slice adds (-1, 0).
  const auto g = graph_normal_generators(Ex1Set(), 0.0, MakePoint({-1.0}));
  bool moving_face = false;
  bool initial = false;
  for (const Covector& c : g) {
    moving_face |= std::abs(c[0] - 1.0) < 1e-12 && std::abs(c[1] + 1.0) < 1e-12;
    initial |= std::abs(c[0] + 1.0) < 1e-12 && std::abs(c[1]) < 1e-12;
  }
  CHECK(moving_face);
  CHECK(initial);
}

TEST_CASE("prox-regularity checks") {
  const auto r1 = check_prox_regularity(Ex2Set(), 1.0, 10000, 3);
  CHECK(r1.pass);
  CHECK(r1.worst_margin <= 0.0);
  const auto r2 = check_prox_regularity(Ex2Set(), 2.0, 10000, 3);
  CHECK_FALSE(r2.pass);
  REQUIRE(r2.witness.has_value());
  // The witness sits on the hole circle.
  CHECK((r2.witness->x - MakePoint({0, 2})).norm() == doctest::Approx(1.0).epsilon(1e-9));
  const MovingSet box = MovingSet::StaticBox(MakePoint({0, 0}), MakePoint({1, 2}));
  CHECK(check_prox_regularity(box, 1e6, 2000, 5).pass);
}

TEST_CASE("set Lipschitz estimates") {
  CHECK(estimate_set_lipschitz(Ex1Set(), 16) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(estimate_set_lipschitz(MovingSet::StaticBox(MakePoint({0, 0}), MakePoint({1, 1})), 8) ==
        doctest::Approx(0.0));
  CHECK(estimate_set_lipschitz(MovingSet::Interval(-1.0, 2.0, 2.0, 0.0), 16) ==
        doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("target superdifferential") {
  const TargetSet s1 = StaticSet::HalfSpace(1, 0, 2.0, true);
  auto z = target_superdifferential(s1, MakePoint({0.0}));
  REQUIRE(z.size() == 1);
  CHECK(z[0][0] == doctest::Approx(-1.0));
  const TargetSet s2 = StaticSet::HalfSpace(2, 1, 4.0, true);
  z = target_superdifferential(s2, MakePoint({1.0, 1.0}));
  REQUIRE(z.size() == 1);
  CHECK(z[0][0] == doctest::Approx(0.0));
  CHECK(z[0][1] == doctest::Approx(-1.0));
  z = target_superdifferential(s2, MakePoint({1.0, 4.0}));
  REQUIRE_FALSE(z.empty());
  CHECK(z[0].norm() == doctest::Approx(1.0));
  CHECK(CodeOf([&] { target_superdifferential(s2, MakePoint({1.0, 5.0})); }) ==
        ErrorCode::kInsideTarget);
}

TEST_CASE("internal sphere radius") {
  CHECK(std::isinf(StaticSet::HalfSpace(2, 1, 4.0, true).internal_sphere_radius()));
  CHECK(StaticSet(BallShape{MakePoint({0, 0}), 0.5}).internal_sphere_radius() == 0.5);
  CHECK(StaticSet(BoxShape{MakePoint({0, 0}), MakePoint({0, 0}), MakePoint({1, 1}),
                           MakePoint({0, 0})})
            .internal_sphere_radius() == 0.0);
}

TEST_CASE("target semiconcavity on sampled pairs") {
  const TargetSet ball(BallShape{MakePoint({0, 0}), 1.0});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const Point x = MakePoint({u(rng), u(rng)});
    const Point y = MakePoint({u(rng), u(rng)});
    if (distance(ball, x) < 1e-6 || distance(ball, y) < 1e-6) continue;
    for (const Point& z : target_superdifferential(ball, x)) {
      CHECK(distance(ball, y) <=
            distance(ball, x) + z.dot(y - x) + (y - x).squaredNorm() / 2.0 + 1e-12);
    }
  }
}

TEST_CASE("projection and distance properties") {
  const MovingSet set = Ex2Set();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ux(-5.5, 5.5), uy(-0.5, 4.5);
  for (int k = 0; k < 2000; ++k) {
    const Point x = MakePoint({ux(rng), uy(rng)});
    const Point y = MakePoint({ux(rng), uy(rng)});
    CHECK(std::abs(distance(set, 0.0, x) - distance(set, 0.0, y)) <= (x - y).norm() + 1e-12);
    const double d = distance(set, 0.0, x);
    if (d >= 0.99) continue;
    const Point p = project(set, 0.0, x);
    CHECK((project(set, 0.0, p) - p).norm() <= 1e-12);
    if (d > 1e-6) {
      // (x - P x) / |x - P x| lies in the cone at P x.
      const Point dir = (x - p) / (x - p).norm();
      const Point in_cone = project_onto_cone(dir, normal_generators(set, 0.0, p));
      CHECK((in_cone - dir).norm() <= 1e-9);
    }
  }
}

TEST_CASE("closed graph of the normal cone along the boundary") {
  const MovingSet set = Ex2Set();
  const Point target = MakePoint({std::sqrt(0.5), 2.0 - std::sqrt(0.5)});
  const auto limit = normal_generators(set, 0.0, target);
  double previous = kInf;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double angle = -std::numbers::pi / 4 - eps;
    const Point x = MakePoint({std::cos(angle), 2.0 + std::sin(angle)});
    const Point g = normal_generators(set, 0.0, x).front();
    const double miss = (project_onto_cone(g, limit) - g).norm();
    CHECK(miss <= previous + 1e-15);
    previous = miss;
  }
  CHECK(previous <= 1e-3);
}

TEST_CASE("moving box with rates") {
  BoxShape box{MakePoint({0, 0}), MakePoint({1, 0}), MakePoint({4, 1}), MakePoint({0, 0})};
  const MovingSet set = MovingSet::Box(box, 4.0);
  CHECK(set.lipschitz() == 1.0);
  CHECK(distance(set, 2.0, MakePoint({1.0, 0.5})) == doctest::Approx(1.0));
  CHECK(hausdorff_distance(set, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
}
