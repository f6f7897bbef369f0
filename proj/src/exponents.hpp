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

#pragma once

#include <span>
#include <vector>

#include "channel.hpp"

namespace shortmol {

// All rates and exponents are in nats. The input distribution is uniform
// throughout (it is the one induced by the random linear code ensemble).

inline constexpr double kDefaultRhoHi = 64.0;

// -log sum_y (PW)(y) * P(X(y))^rho, where (PW)(y) is the output distribution
// under uniform inputs and P(X(y)) = |X(y)|/q. Outputs with empty support
// carry no mass and contribute nothing. At rho == 0 the sum is identically 1,
// so 0 is returned without accumulating row-sum rounding noise.
double e0_tilde(const Channel& channel, double rho);

struct ExponentResult {
  double exponent = 0.0;   // sup_{rho > 0} { e0_tilde(rho) - rho * rate }, clamped >= 0
  double rho_star = 0.0;
  bool saturated = false;  // maximizer hit the rho_hi cap (sup attained only in the limit)
};

// Golden-section search on [0, rho_hi]; the objective is concave in rho.
ExponentResult erasure_exponent(const Channel& channel, double rate,
                                double rho_hi = kDefaultRhoHi);

// Maximal rate with a positive erasure exponent:
// sum_y (PW)(y) * log(1 / P(X(y))). Zero for full-support channels.
double r_max(const Channel& channel);

// log 2 - h(eps)/2 with h the natural-log binary entropy; a lower bound on the
// zero-undetected-error capacity of the typewriter channel.
double typewriter_c0u_lower_bound(double eps);

struct ExponentCurve {
  std::vector<double> rates;
  std::vector<double> exponents;
  std::vector<double> rho_stars;
  std::vector<bool> saturated;
};

// Evaluates erasure_exponent over an ascending rate grid.
ExponentCurve exponent_sweep(const Channel& channel, std::span<const double> rates,
                             double rho_hi = kDefaultRhoHi);

}  // namespace shortmol
