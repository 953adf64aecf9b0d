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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "moreau/solver.hpp"

namespace moreau {

Modulus Modulus::Constant(double c) {
  Modulus mu;
  mu.kind = Kind::kConstant;
  mu.scale = c;
  return mu;
}

Modulus Modulus::Power(double c, double a) {
  Modulus mu;
  mu.kind = Kind::kPower;
  mu.scale = c;
  mu.exponent = a;
  return mu;
}

Modulus Modulus::Table(std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "modulus table is empty");
  std::sort(points.begin(), points.end());
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].first == points[k - 1].first || points[k].second < points[k - 1].second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "modulus table needs distinct abscissae and nondecreasing values");
    }
  }
  Modulus mu;
  mu.kind = Kind::kTable;
  mu.table = std::move(points);
  return mu;
}

double Modulus::operator()(double r) const {
  switch (kind) {
    case Kind::kConstant:
      return scale;
    case Kind::kPower:
      return scale * std::pow(r, exponent);
    case Kind::kTable: {
      if (r <= table.front().first) return table.front().second;
      if (r >= table.back().first) return table.back().second;
      const auto it = std::upper_bound(table.begin(), table.end(), std::make_pair(r, -kInf),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
      const auto& [r1, m1] = *it;
      const auto& [r0, m0] = *(it - 1);
      return m0 + (m1 - m0) * (r - r0) / (r1 - r0);
    }
  }
  return 0.0;
}

nlohmann::json Modulus::to_json() const {
  switch (kind) {
    case Kind::kConstant:
      return {{"kind", "constant"}, {"c", scale}};
    case Kind::kPower:
      return {{"kind", "power"}, {"c", scale}, {"exponent", exponent}};
    case Kind::kTable: {
      nlohmann::json pts = nlohmann::json::array();
      for (const auto& [r, m] : table) pts.push_back({r, m});
      return {{"kind", "table"}, {"points", pts}};
    }
  }
  return {};
}

namespace {

// Integral of 1 / mu over [0, b].
double InverseIntegral(const Modulus& mu, double b) {
  if (!(b >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "integration bound must be >= 0");
  if (b == 0.0) return 0.0;
  if (!std::isfinite(b)) throw Error(ErrorCode::kDivergentIntegral, "infinite integration range");

  auto divergent = [&](const std::string& why) {
    std::ostringstream os;
    os << "1/mu is not integrable on [0, " << b << "]: " << why;
    return Error(ErrorCode::kDivergentIntegral, os.str());
  };
  std::vector<double> breaks = {0.0};
  switch (mu.kind) {
    case Modulus::Kind::kConstant:
      if (!(mu.scale > 0.0)) throw divergent("mu is not positive");
      return b / mu.scale;
    case Modulus::Kind::kPower:
      if (!(mu.scale > 0.0)) throw divergent("mu is not positive");
      if (mu.exponent >= 1.0) throw divergent("mu vanishes at 0 to order >= 1");
      break;
    case Modulus::Kind::kTable:
      if (!(mu(0.0) > 0.0)) throw divergent("piecewise-linear mu vanishes at 0");
      for (const auto& [r, m] : mu.table) {
        if (m <= 0.0 && r <= b) throw divergent("mu is not positive on the range");
        if (r > 0.0 && r < b) breaks.push_back(r);
      }
      break;
  }
  breaks.push_back(b);
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&mu](double r) { return 1.0 / mu(r); };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    total += integrator.integrate(f, breaks[k], breaks[k + 1]);
  }
  if (!std::isfinite(total)) throw divergent("quadrature did not converge");
  return total;
}

}  // namespace

double continuity_modulus_bound(const Modulus& mu, double K, double T_bound, double K_prime,
                                double dx, double dt) {
  if (!(dx >= 0.0) || !(dt >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dx and dt must be nonnegative");
  }
  const double upper = std::exp(K * T_bound) * dx + K_prime * std::sqrt(dt);
  return 2.0 * InverseIntegral(mu, upper);
}

double reach_time_upper_bound(const Modulus& mu, double dS0) {
  return 2.0 * InverseIntegral(mu, dS0);
}

}  // namespace moreau
