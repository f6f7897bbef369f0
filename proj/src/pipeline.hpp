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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "channel.hpp"
#include "linear_code.hpp"
#include "outer_code.hpp"
#include "rng.hpp"

namespace shortmol {

// End-to-end storage/retrieval simulation: a histogram codeword over the T
// inner codewords is sampled at coverage depth xi, every read is sequenced
// through the channel and ZUE-decoded, survivors form the frequency vector,
// and the outer minimum-KL decoder picks the message. Sampling uses the
// multinomial formulation directly (no pool multiset is materialized).

struct ExperimentParams {
  std::int64_t M = 0;        // pool size bound
  double xi = 1.0;           // coverage depth N/M
  int codebook_size = 1;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
};

struct TrialRecord {
  std::uint32_t transmitted = 0;
  std::int64_t survivors = 0;
  std::int64_t erased = 0;
  std::int32_t decoded = -1;   // -1 on the S = 0 path
  bool pipeline_error = false;  // S = 0: an error is declared
  bool tie = false;
  bool error = false;
};

struct SimulationReport {
  ExperimentParams params;
  std::int64_t N = 0;
  int T = 0;
  int q = 0, K = 0, L = 0;
  double beta_implied = 0.0;  // L / log(M)
  double rate_nats = 0.0;     // K log(q) / L
  std::uint64_t codebook_seed = 0;

  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double err_rate = 0.0;
  double err_ci_half = 0.0;  // Wilson 95%
  double mean_erasure_frac = 0.0;
  double mean_survivors = 0.0;
  std::int64_t min_survivors = 0;
  std::int64_t max_survivors = 0;
  std::uint64_t s_zero_count = 0;
  double s_zero_frac = 0.0;
  std::uint64_t tie_count = 0;
  std::uint64_t undetected_inner_errors = 0;  // must be 0 always
  std::uint64_t inner_decodes = 0;
};

// U ~ Multinomial(N, counts / sum(counts)); the entries sum to N.
std::vector<std::int64_t> sample_reads(std::span<const std::int64_t> counts,
                                       std::int64_t N, Rng& rng);

TrialRecord run_trial(const Channel& channel, const CodeTable& table,
                      const OuterCodebook& codebook, std::int64_t N,
                      std::uint64_t master_seed, std::uint64_t trial_index,
                      DecodeStats& stats);

// Aggregates `trials` independent trials; deterministic in master_seed
// regardless of the thread count. The code must have distinct codewords
// (T distinct molecule types) and T < M; the channel must be symmetric.
SimulationReport run_experiment(const Channel& channel, const LinearCode& code,
                                const ExperimentParams& params, int threads = 1,
                                std::vector<TrialRecord>* trial_log = nullptr);

struct ChernoffSCheck {
  double empirical = 0.0;  // frequency of { S <= N * P_c * (1 - kappa) }
  double bound = 0.0;      // exp(-kappa^2 * N * P_c / 2)
  double std_error = 0.0;
  double p_correct = 0.0;  // P_c used, 1 - inner erasure probability
};

// Simulates the survivor count S over a uniform pool of the code's T types
// and compares the lower-tail frequency to the multiplicative Chernoff bound.
ChernoffSCheck chernoff_s_bound_check(const Channel& channel, const LinearCode& code,
                                      std::int64_t N, std::uint64_t trials, double kappa,
                                      std::uint64_t seed);

struct Chi2MeanCheck {
  double empirical_mean = 0.0;
  double analytic = 0.0;  // (T - 1) / N
  double std_error = 0.0;
};

// Mean of chi^2(U/N || p_hat) over multinomial draws at full survival, against
// the closed form (T-1)/N. Uses the uniform p_hat unless one is supplied.
Chi2MeanCheck multinomial_chi2_mean_check(int T, std::int64_t N, std::uint64_t trials,
                                          std::uint64_t seed,
                                          std::span<const double> p_hat = {});

}  // namespace shortmol
