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
#include <string>
#include <vector>

#include "channel.hpp"
#include "rng.hpp"

namespace shortmol {

// Uniform draw from the (T-1)-simplex: T Exponential(1) variates, normalized
// (Dirichlet(1,...,1)).
std::vector<double> sample_dirichlet_uniform(int T, Rng& rng);

// Histogram codeword: floor(M * p_l) copies of molecule type l, plus the
// empirical PMF obtained by renormalizing the counts.
struct OuterCodeword {
  std::vector<std::int64_t> counts;
  std::vector<double> pmf;
  std::int64_t total = 0;
};

// Requires M > T so the floor loss (at most one unit per type) cannot empty
// the codeword.
OuterCodeword quantize(std::span<const double> p, std::int64_t M);

struct OuterCodebook {
  std::int64_t M = 0;
  int T = 0;
  std::uint64_t seed = 0;
  std::vector<OuterCodeword> words;
};

OuterCodebook build_codebook(int size, int T, std::int64_t M, std::uint64_t seed);

void save_codebook(const OuterCodebook& codebook, const std::string& path);
OuterCodebook load_codebook(const std::string& path);

// D(q || p) in nats with 0 log(0/x) := 0; +infinity when q puts mass where p
// has none. chi_square follows the same support convention.
double kl_divergence(std::span<const double> q, std::span<const double> p);
double chi_square(std::span<const double> q, std::span<const double> p);

struct KlDecodeResult {
  int index = 0;
  double divergence = 0.0;
  int tie_count = 0;        // codewords beyond the winner achieving the minimum
  bool all_infinite = false;  // no codeword covers the support of q_hat
};

// argmin_m D(q_hat || pmf_m), ties broken by lowest index.
KlDecodeResult kl_decode(const OuterCodebook& codebook, std::span<const double> q_hat);

// (1/2 - sigma) * T * log(M/T); the log-cardinality the analysis assigns to
// the storage codebook. Reported as a number, never materialized.
double theorem3_log_codebook_size(double M, int T, double sigma);

// (1 - beta*R_max)/2 * M^(beta*R_max) * log(M); requires the short-molecule
// condition 0 < beta < 1/log(q).
double psi_lower_bound(double M, double beta, const Channel& channel);

}  // namespace shortmol
