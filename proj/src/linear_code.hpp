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
#include <span>
#include <vector>

#include "channel.hpp"
#include "rng.hpp"

namespace shortmol {

// Linear block code over Z_q given by a K x L generator matrix. Messages are
// expanded into K base-q digits little-endian; the codeword is the digit
// vector times the generator, mod q. The all-zero codeword (message 0) is
// always in the code. Immutable after construction.
class LinearCode {
 public:
  LinearCode(int q, int K, int L, std::vector<int> generator);

  int q() const { return q_; }
  int message_symbols() const { return K_; }
  int block_length() const { return L_; }
  std::uint64_t codebook_size() const { return T_; }  // q^K
  const std::vector<int>& generator() const { return gen_; }
  int generator_at(int k, int l) const { return gen_[static_cast<std::size_t>(k) * L_ + l]; }

  // True iff all q^K codewords are distinct. Established by rank over Z_q for
  // prime q, by codeword enumeration for composite q with q^K <= 10^5, and
  // false (unknown) otherwise.
  bool full_rank() const { return full_rank_; }

  void encode(std::uint64_t message, std::span<int> out) const;
  std::vector<int> encode(std::uint64_t message) const;

 private:
  int q_, K_, L_;
  std::uint64_t T_;
  std::vector<int> gen_;  // row-major K x L
  bool full_rank_;
};

bool is_prime(int n);

// Rank of a K x L matrix over the prime field Z_q.
int rank_mod_prime(std::span<const int> matrix, int K, int L, int q);

// Generator entries i.i.d. uniform on Z_q. With require_full_rank the draw is
// rejection-resampled until rank K; this demands prime q.
LinearCode sample_generator(int q, int K, int L, Rng& rng, bool require_full_rank);

struct ZueOutcome {
  bool erasure = true;
  std::uint64_t message = 0;  // valid only when !erasure
};

// Running totals for the structural zero-undetected-error guarantee: in every
// trial the decoder returned either the transmitted message or an erasure.
struct DecodeStats {
  std::uint64_t decodes = 0;
  std::uint64_t undetected = 0;

  void merge(const DecodeStats& other) {
    decodes += other.decodes;
    undetected += other.undetected;
  }
};

// Materialized codebook for decode-heavy loops.
class CodeTable {
 public:
  explicit CodeTable(const LinearCode& code);

  int q() const { return q_; }
  int block_length() const { return L_; }
  std::uint64_t size() const { return T_; }
  std::span<const int> word(std::uint64_t m) const {
    return {words_.data() + m * L_, static_cast<std::size_t>(L_)};
  }
  bool distinct_words() const;

 private:
  int q_, L_;
  std::uint64_t T_;
  std::vector<int> words_;
};

// A codeword is feasible for y iff every position is in the channel support.
// Returns the unique feasible message, or an erasure when zero or more than
// one codeword is feasible (enumeration early-exits at the second one).
ZueOutcome zue_decode(const LinearCode& code, const Channel& channel,
                      std::span<const int> y_vec);
ZueOutcome zue_decode(const CodeTable& table, const Channel& channel,
                      std::span<const int> y_vec);

inline constexpr double kExactEnumerationBudget = 1e7;  // max output_size^L

// Exact conditional erasure probability for every message, by enumeration of
// the full output space (pruned on zero-probability prefixes).
std::vector<double> erasure_prob_exact_all(const LinearCode& code, const Channel& channel,
                                           DecodeStats* stats = nullptr);
double erasure_prob_exact(const LinearCode& code, const Channel& channel,
                          std::uint64_t transmitted, DecodeStats* stats = nullptr);

struct McEstimate {
  double estimate = 0.0;
  double half_width_95 = 0.0;  // Wilson score interval
  std::uint64_t trials = 0;
  DecodeStats stats;
};

McEstimate erasure_prob_mc(const LinearCode& code, const Channel& channel,
                           std::uint64_t transmitted, std::uint64_t trials, Rng& rng);

struct EnsembleEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // across-code sample std / sqrt(n_codes)
  int n_codes = 0;
  std::uint64_t trials_per_code = 0;
  DecodeStats stats;
};

// Ensemble-average erasure probability with message 0 transmitted in every
// trial (representative by message independence). Codes are drawn i.i.d.
// uniform; the default ensemble keeps rank-deficient generators, which is the
// ensemble the exponential bound is stated for. Requires a symmetric channel;
// refuses otherwise. Deterministic in master_seed regardless of thread count.
EnsembleEstimate ensemble_erasure_prob(int q, int K, int L, const Channel& channel,
                                       int n_codes, std::uint64_t trials_per_code,
                                       std::uint64_t master_seed, int threads = 1,
                                       bool require_full_rank = false);

// Ensemble-average erasure bound exp{-L * sup_{0 < rho <= 1} (e0(rho) - rho R)},
// clamped to [0, 1]. The rho cap is forced by the union-bound power step in
// the derivation; see theorem2_bound in linear_code.cpp.
double theorem2_bound(const Channel& channel, int L, double rate);

// Max pairwise difference of exact conditional erasure probabilities across
// messages. Requires a symmetric channel and the enumeration budget.
double message_independence_check(const LinearCode& code, const Channel& channel,
                                  DecodeStats* stats = nullptr);

double wilson_half_width_95(std::uint64_t successes, std::uint64_t trials);

}  // namespace shortmol
