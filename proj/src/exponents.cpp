// Copyright 2026 The shortmol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace shortmol {

double e0_tilde(const Channel& channel, double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("rho must be finite and non-negative");
  }
  if (rho == 0.0) return 0.0;

  const int q = channel.input_size();
  double sum = 0.0;
  for (int y = 0; y < channel.output_size(); ++y) {
    const int cnt = channel.support_count(y);
    if (cnt == 0) continue;  // unreachable output
    const double pw = channel.output_prob_uniform(y);
    const double px = static_cast<double>(cnt) / q;
    sum += pw * std::pow(px, rho);
  }
  return -std::log(sum);
}

ExponentResult erasure_exponent(const Channel& channel, double rate, double rho_hi) {
  if (!std::isfinite(rate)) throw std::invalid_argument("rate must be finite");
  if (rate < 0.0) throw std::invalid_argument("rate must be non-negative");
  if (!(rho_hi > 0.0) || !std::isfinite(rho_hi)) {
    throw std::invalid_argument("rho_hi must be finite and positive");
  }

  const auto objective = [&](double rho) { return e0_tilde(channel, rho) - rho * rate; };

  // Golden-section maximization of a concave function on [0, rho_hi].
  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kRhoTolerance = 1e-10;
  double a = 0.0, b = rho_hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > kRhoTolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }

  double rho_star = 0.5 * (a + b);
  double value = objective(rho_star);

  // The supremum sits on the boundary when the cap value matches the interior
  // maximum; this also covers objectives that plateau numerically below the
  // cap, where the bracket stops at the plateau edge.
  const double cap_value = objective(rho_hi);
  const bool saturated = cap_value >= value - 1e-12 * std::max(1.0, std::fabs(value));
  if (saturated) {
    rho_star = rho_hi;
    value = std::max(value, cap_value);
  }

  // Values at rounding-noise scale mean the objective is non-positive
  // throughout (rate at or above the maximal rate).
  if (!(value > 1e-12)) return {0.0, 0.0, false};
  return {value, rho_star, saturated};
}

double r_max(const Channel& channel) {
  const int q = channel.input_size();
  double sum = 0.0;
  for (int y = 0; y < channel.output_size(); ++y) {
    const int cnt = channel.support_count(y);
    if (cnt == 0) continue;
    const double pw = channel.output_prob_uniform(y);
    sum += pw * std::log(static_cast<double>(q) / cnt);
  }
  return sum;
}

double typewriter_c0u_lower_bound(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in [0, 1]");
  double h = 0.0;
  if (eps > 0.0 && eps < 1.0) {
    h = -eps * std::log(eps) - (1.0 - eps) * std::log(1.0 - eps);
  }
  return std::log(2.0) - 0.5 * h;
}

ExponentCurve exponent_sweep(const Channel& channel, std::span<const double> rates,
                             double rho_hi) {
  if (rates.empty()) throw std::invalid_argument("rate grid must not be empty");
  for (std::size_t i = 1; i < rates.size(); ++i) {
    if (rates[i] < rates[i - 1]) {
      throw std::invalid_argument("rate grid must be sorted ascending");
    }
  }

  ExponentCurve curve;
  curve.rates.assign(rates.begin(), rates.end());
  curve.exponents.reserve(rates.size());
  curve.rho_stars.reserve(rates.size());
  curve.saturated.reserve(rates.size());
  for (double rate : rates) {
    const ExponentResult res = erasure_exponent(channel, rate, rho_hi);
    curve.exponents.push_back(res.exponent);
    curve.rho_stars.push_back(res.rho_star);
    curve.saturated.push_back(res.saturated);
  }
  return curve;
}

}  // namespace shortmol
