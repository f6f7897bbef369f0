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

#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"

namespace shortmol {

std::vector<std::int64_t> sample_reads(std::span<const std::int64_t> counts,
                                       std::int64_t N, Rng& rng) {
  if (N < 0) throw std::invalid_argument("number of reads must be non-negative");
  std::int64_t total = 0;
  for (auto c : counts) {
    if (c < 0) throw std::invalid_argument("counts must be non-negative");
    total += c;
  }
  if (total <= 0) throw std::invalid_argument("pool must contain at least one molecule");

  std::vector<double> cum;
  std::vector<int> type_of;
  cum.reserve(counts.size());
  type_of.reserve(counts.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) {
      acc += static_cast<double>(counts[i]);
      cum.push_back(acc);
      type_of.push_back(static_cast<int>(i));
    }
  }

  std::vector<std::int64_t> reads(counts.size(), 0);
  for (std::int64_t n = 0; n < N; ++n) {
    const double u = rng.next_double() * acc;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const std::size_t idx = it == cum.end() ? cum.size() - 1 : static_cast<std::size_t>(it - cum.begin());
    ++reads[type_of[idx]];
  }
  return reads;
}

TrialRecord run_trial(const Channel& channel, const CodeTable& table,
                      const OuterCodebook& codebook, std::int64_t N,
                      std::uint64_t master_seed, std::uint64_t trial_index,
                      DecodeStats& stats) {
  const int T = static_cast<int>(table.size());
  const int L = table.block_length();

  Rng trial_rng = substream(master_seed, kStreamTrialBase + trial_index, 0);
  TrialRecord rec;
  rec.transmitted = static_cast<std::uint32_t>(trial_rng.next_below(codebook.words.size()));
  const OuterCodeword& sent = codebook.words[rec.transmitted];

  const std::vector<std::int64_t> reads = sample_reads(sent.counts, N, trial_rng);

  std::vector<std::int64_t> survivors_per_type(T, 0);
  std::vector<int> y(L);
  std::uint64_t read_index = 0;
  for (int type = 0; type < T; ++type) {
    const auto word = table.word(type);
    for (std::int64_t r = 0; r < reads[type]; ++r, ++read_index) {
      Rng read_rng = substream(master_seed, kStreamTrialBase + trial_index, 1 + read_index);
      channel.sequence(word, y, read_rng);
      const ZueOutcome out = zue_decode(table, channel, y);
      ++stats.decodes;
      if (!out.erasure) {
        if (out.message != static_cast<std::uint64_t>(type)) ++stats.undetected;
        ++survivors_per_type[out.message];
        ++rec.survivors;
      }
    }
  }
  rec.erased = N - rec.survivors;

  if (rec.survivors == 0) {
    rec.pipeline_error = true;
    rec.error = true;
    rec.decoded = -1;
    return rec;
  }

  std::vector<double> q_hat(T);
  for (int t = 0; t < T; ++t) {
    q_hat[t] = static_cast<double>(survivors_per_type[t]) / static_cast<double>(rec.survivors);
  }
  const KlDecodeResult res = kl_decode(codebook, q_hat);
  rec.decoded = res.index;
  rec.tie = res.tie_count > 0;
  rec.error = res.index != static_cast<int>(rec.transmitted);
  return rec;
}

SimulationReport run_experiment(const Channel& channel, const LinearCode& code,
                                const ExperimentParams& params, int threads,
                                std::vector<TrialRecord>* trial_log) {
  if (params.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (params.codebook_size < 1) throw std::invalid_argument("codebook size must be at least 1");
  if (!(params.xi > 0.0) || !std::isfinite(params.xi)) {
    throw std::invalid_argument("coverage depth xi must be positive");
  }
  if (code.q() != channel.input_size()) {
    throw std::invalid_argument("code alphabet does not match the channel input alphabet");
  }
  require_symmetric(channel);
  if (!code.full_rank()) {
    throw std::invalid_argument(
        "the storage pipeline needs T distinct molecule types; use a full-rank inner code");
  }

  const std::uint64_t T64 = code.codebook_size();
  if (params.M <= static_cast<std::int64_t>(T64)) {
    throw std::invalid_argument("pool bound M must exceed the number of molecule types T");
  }
  const std::int64_t N = std::llround(params.xi * static_cast<double>(params.M));
  if (N < 1) throw std::invalid_argument("coverage depth xi*M must give at least one read");

  const CodeTable table(code);
  const std::uint64_t codebook_seed = stream_seed(params.master_seed, kStreamCodebook);
  const OuterCodebook codebook =
      build_codebook(params.codebook_size, static_cast<int>(T64), params.M, codebook_seed);

  std::vector<TrialRecord> records(params.trials);
  std::vector<DecodeStats> stats(params.trials);
  parallel_for(params.trials, threads, [&](std::uint64_t t) {
    records[t] = run_trial(channel, table, codebook, N, params.master_seed, t, stats[t]);
  });

  SimulationReport rep;
  rep.params = params;
  rep.N = N;
  rep.T = static_cast<int>(T64);
  rep.q = code.q();
  rep.K = code.message_symbols();
  rep.L = code.block_length();
  rep.beta_implied = code.block_length() / std::log(static_cast<double>(params.M));
  rep.rate_nats = code.message_symbols() * std::log(static_cast<double>(code.q())) /
                  code.block_length();
  rep.codebook_seed = codebook_seed;
  rep.trials = params.trials;

  double erasure_frac_sum = 0.0;
  double survivors_sum = 0.0;
  rep.min_survivors = N;
  rep.max_survivors = 0;
  DecodeStats total_stats;
  for (std::uint64_t t = 0; t < params.trials; ++t) {
    const TrialRecord& r = records[t];
    if (r.error) ++rep.errors;
    if (r.pipeline_error) ++rep.s_zero_count;
    if (r.tie) ++rep.tie_count;
    erasure_frac_sum += static_cast<double>(r.erased) / static_cast<double>(N);
    survivors_sum += static_cast<double>(r.survivors);
    rep.min_survivors = std::min(rep.min_survivors, r.survivors);
    rep.max_survivors = std::max(rep.max_survivors, r.survivors);
    total_stats.merge(stats[t]);
  }
  rep.err_rate = static_cast<double>(rep.errors) / static_cast<double>(rep.trials);
  rep.err_ci_half = wilson_half_width_95(rep.errors, rep.trials);
  rep.mean_erasure_frac = erasure_frac_sum / static_cast<double>(rep.trials);
  rep.mean_survivors = survivors_sum / static_cast<double>(rep.trials);
  rep.s_zero_frac = static_cast<double>(rep.s_zero_count) / static_cast<double>(rep.trials);
  rep.undetected_inner_errors = total_stats.undetected;
  rep.inner_decodes = total_stats.decodes;

  if (trial_log) *trial_log = std::move(records);
  return rep;
}

ChernoffSCheck chernoff_s_bound_check(const Channel& channel, const LinearCode& code,
                                      std::int64_t N, std::uint64_t trials, double kappa,
                                      std::uint64_t seed) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw std::invalid_argument("kappa must lie in (0, 1)");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  require_symmetric(channel);

  // By message independence every read survives with the same probability,
  // regardless of the pool composition; a uniform pool is used here.
  double p_er;
  double budget = 1.0;
  for (int i = 0; i < code.block_length() && budget <= kExactEnumerationBudget; ++i) {
    budget *= channel.output_size();
  }
  if (budget <= kExactEnumerationBudget) {
    p_er = erasure_prob_exact(code, channel, 0);
  } else {
    Rng rng = substream(seed, kStreamCodeSample);
    p_er = erasure_prob_mc(code, channel, 0, 100000, rng).estimate;
  }
  const double p_c = 1.0 - p_er;
  const double threshold = static_cast<double>(N) * p_c * (1.0 - kappa);

  const CodeTable table(code);
  const int T = static_cast<int>(table.size());
  const int L = table.block_length();
  std::vector<std::int64_t> uniform_pool(T, 1);

  std::uint64_t below = 0;
  std::vector<int> y(L);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng trial_rng = substream(seed, kStreamTrialBase + t, 0);
    const std::vector<std::int64_t> reads = sample_reads(uniform_pool, N, trial_rng);
    std::int64_t survivors = 0;
    std::uint64_t read_index = 0;
    for (int type = 0; type < T; ++type) {
      const auto word = table.word(type);
      for (std::int64_t r = 0; r < reads[type]; ++r, ++read_index) {
        Rng read_rng = substream(seed, kStreamTrialBase + t, 1 + read_index);
        channel.sequence(word, y, read_rng);
        if (!zue_decode(table, channel, y).erasure) ++survivors;
      }
    }
    if (static_cast<double>(survivors) <= threshold) ++below;
  }

  ChernoffSCheck out;
  out.p_correct = p_c;
  out.empirical = static_cast<double>(below) / static_cast<double>(trials);
  out.bound = std::exp(-0.5 * kappa * kappa * static_cast<double>(N) * p_c);
  out.std_error =
      std::sqrt(out.empirical * (1.0 - out.empirical) / static_cast<double>(trials));
  return out;
}

Chi2MeanCheck multinomial_chi2_mean_check(int T, std::int64_t N, std::uint64_t trials,
                                          std::uint64_t seed,
                                          std::span<const double> p_hat) {
  if (T < 2) throw std::invalid_argument("T must be at least 2");
  if (N < T) throw std::invalid_argument("N must be at least T");
  if (trials < 2) throw std::invalid_argument("trials must be at least 2");

  std::vector<double> p;
  if (p_hat.empty()) {
    p.assign(T, 1.0 / T);
  } else {
    if (static_cast<int>(p_hat.size()) != T) {
      throw std::invalid_argument("p_hat length must equal T");
    }
    for (double v : p_hat) {
      if (!(v > 0.0)) throw std::invalid_argument("p_hat must be interior (all entries > 0)");
    }
    p.assign(p_hat.begin(), p_hat.end());
  }

  // Multinomial sampling over p via integer weights is avoided; draw directly
  // from the cumulative of p.
  std::vector<double> cum(T);
  double acc = 0.0;
  for (int i = 0; i < T; ++i) {
    acc += p[i];
    cum[i] = acc;
  }

  double sum = 0.0, sum_sq = 0.0;
  std::vector<std::int64_t> u(T);
  std::vector<double> q(T);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = substream(seed, kStreamTrialBase + t, 0);
    std::fill(u.begin(), u.end(), 0);
    for (std::int64_t n = 0; n < N; ++n) {
      const double v = rng.next_double() * acc;
      const auto it = std::upper_bound(cum.begin(), cum.end(), v);
      const std::size_t idx =
          it == cum.end() ? cum.size() - 1 : static_cast<std::size_t>(it - cum.begin());
      ++u[idx];
    }
    for (int i = 0; i < T; ++i) q[i] = static_cast<double>(u[i]) / static_cast<double>(N);
    const double c2 = chi_square(q, p);
    sum += c2;
    sum_sq += c2 * c2;
  }

  Chi2MeanCheck out;
  out.empirical_mean = sum / static_cast<double>(trials);
  out.analytic = static_cast<double>(T - 1) / static_cast<double>(N);
  const double var =
      (sum_sq - sum * sum / static_cast<double>(trials)) / static_cast<double>(trials - 1);
  out.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
  return out;
}

}  // namespace shortmol
