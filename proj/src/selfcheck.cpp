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

#include "selfcheck.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "exponents.hpp"
#include "linear_code.hpp"
#include "outer_code.hpp"
#include "pipeline.hpp"
#include "text_io.hpp"

namespace shortmol {

namespace {

CheckResult run_one(const std::string& name, const std::function<std::string()>& body) {
  CheckResult res;
  res.name = name;
  try {
    res.detail = body();
    res.pass = true;
  } catch (const std::exception& e) {
    res.pass = false;
    res.detail = e.what();
  }
  return res;
}

[[noreturn]] void check_failed(const std::string& msg) { throw std::runtime_error(msg); }

std::string check_builtin_witnesses() {
  const Channel channels[] = {
      Channel::erasure(2, 0.3), Channel::erasure(4, 0.1), Channel::typewriter(0.4),
      Channel::identity(5),     Channel::qary_symmetric(3, 0.2),
  };
  for (const auto& ch : channels) {
    if (!ch.witness() || !verify_symmetry(ch, *ch.witness())) {
      check_failed("a built-in channel failed its bundled witness verification");
    }
  }
  const auto found = find_symmetry_witness(Channel::typewriter(0.25));
  if (!found) check_failed("witness search failed on the typewriter channel");
  for (int y = 0; y < 3; ++y) {
    if (found->table[0][y] != y) check_failed("found witness does not fix the zero shift");
  }
  return "5 bundled witnesses verified";
}

std::string check_message_independence(const SelfcheckOptions& options) {
  std::vector<Channel> channels;
  if (options.message_independence_channel) {
    channels.push_back(*options.message_independence_channel);
  } else {
    channels.push_back(Channel::erasure(2, 0.4));
    channels.push_back(Channel::typewriter(0.5));
  }
  int configs = 0;
  for (const auto& ch : channels) {
    Rng rng(stream_seed(options.seed, 11));
    for (int rep = 0; rep < 4; ++rep) {
      const LinearCode code = sample_generator(ch.input_size(), 1, 3, rng, true);
      const double diff = message_independence_check(code, ch);
      if (!(diff <= 1e-12)) {
        check_failed("exact conditional erasure probabilities differ across messages by " +
                     format_double(diff));
      }
      ++configs;
    }
  }
  return std::to_string(configs) + " exact configurations within 1e-12";
}

std::string check_kl_chi2_inequality(std::uint64_t seed) {
  Rng rng(stream_seed(seed, 12));
  for (int i = 0; i < 10000; ++i) {
    const int n = 2 + static_cast<int>(rng.next_below(6));
    const auto q = sample_dirichlet_uniform(n, rng);
    const auto p = sample_dirichlet_uniform(n, rng);
    const double d = kl_divergence(q, p);
    const double c2 = chi_square(q, p);
    if (!(d <= c2 + 1e-12)) {
      check_failed("found a pair with D = " + format_double(d) + " > chi^2 = " +
                   format_double(c2));
    }
  }
  return "10000 random common-support pairs satisfy D <= chi^2";
}

std::string check_exponent_properties() {
  const Channel channels[] = {Channel::erasure(2, 0.3), Channel::typewriter(0.5),
                              Channel::qary_symmetric(2, 0.1)};
  for (const auto& ch : channels) {
    if (e0_tilde(ch, 0.0) != 0.0) check_failed("e0(0) is not exactly zero");
    double prev = e0_tilde(ch, 0.1) / 0.1;
    for (double rho = 0.6; rho <= 64.0; rho += 0.5) {
      const double cur = e0_tilde(ch, rho) / rho;
      if (cur > prev + 1e-12) check_failed("e0(rho)/rho increased along the grid");
      prev = cur;
    }
    const double limit = e0_tilde(ch, 1e-6) / 1e-6;
    if (std::fabs(limit - r_max(ch)) > 1e-4) {
      check_failed("e0(rho)/rho near zero misses the closed-form maximal rate");
    }
  }
  return "e0 properties hold on 3 channels";
}

std::string check_chi2_mean(std::uint64_t seed) {
  const Chi2MeanCheck res = multinomial_chi2_mean_check(5, 50, 4000, stream_seed(seed, 13));
  if (std::fabs(res.empirical_mean - res.analytic) > 5.0 * res.std_error) {
    check_failed("empirical mean " + format_double(res.empirical_mean) +
                 " deviates from (T-1)/N = " + format_double(res.analytic) +
                 " by more than 5 standard errors");
  }
  return "empirical " + format_double(res.empirical_mean) + " vs analytic " +
         format_double(res.analytic);
}

std::string check_quantize_bounds(std::uint64_t seed) {
  Rng rng(stream_seed(seed, 14));
  const std::int64_t M = 100;
  const int T = 10;
  for (int i = 0; i < 1000; ++i) {
    const auto w = quantize(sample_dirichlet_uniform(T, rng), M);
    if (w.total < M - T || w.total > M) {
      check_failed("count total " + std::to_string(w.total) + " escapes [M-T, M]");
    }
    double s = 0.0;
    for (int t = 0; t < T; ++t) {
      if ((w.pmf[t] == 0.0) != (w.counts[t] == 0)) {
        check_failed("empirical PMF support differs from the count support");
      }
      s += w.pmf[t];
    }
    if (std::fabs(s - 1.0) > 1e-12) check_failed("empirical PMF does not sum to 1");
  }
  return "1000 quantized codewords within the floor-loss bounds";
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options) {
  std::vector<CheckResult> out;
  out.push_back(run_one("builtin-witnesses", check_builtin_witnesses));
  out.push_back(run_one("prop1-message-independence",
                        [&] { return check_message_independence(options); }));
  out.push_back(
      run_one("kl-chi2-inequality", [&] { return check_kl_chi2_inequality(options.seed); }));
  out.push_back(run_one("e0-properties", check_exponent_properties));
  out.push_back(run_one("chi2-mean-identity", [&] { return check_chi2_mean(options.seed); }));
  out.push_back(run_one("quantize-bounds", [&] { return check_quantize_bounds(options.seed); }));
  return out;
}

}  // namespace shortmol
