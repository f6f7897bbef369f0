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

#include "linear_code.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "exponents.hpp"
#include "parallel.hpp"

namespace shortmol {

namespace {

std::uint64_t checked_pow(int base, int exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / base) return cap + 1;
    v *= static_cast<std::uint64_t>(base);
  }
  return v;
}

bool distinct_codewords_by_enumeration(const LinearCode& code) {
  const std::uint64_t T = code.codebook_size();
  std::vector<std::vector<int>> words;
  words.reserve(T);
  for (std::uint64_t m = 0; m < T; ++m) words.push_back(code.encode(m));
  std::sort(words.begin(), words.end());
  return std::adjacent_find(words.begin(), words.end()) == words.end();
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int rank_mod_prime(std::span<const int> matrix, int K, int L, int q) {
  std::vector<int> m(matrix.begin(), matrix.end());
  int rank = 0;
  for (int col = 0; col < L && rank < K; ++col) {
    int pivot = -1;
    for (int row = rank; row < K; ++row) {
      if (m[static_cast<std::size_t>(row) * L + col] % q != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) continue;
    for (int j = 0; j < L; ++j) {
      std::swap(m[static_cast<std::size_t>(pivot) * L + j],
                m[static_cast<std::size_t>(rank) * L + j]);
    }
    // Scale the pivot row to 1 via the modular inverse p^(q-2) (q prime).
    const int p = m[static_cast<std::size_t>(rank) * L + col] % q;
    int inv = 1;
    for (int e = 0; e < q - 2; ++e) inv = (inv * p) % q;
    for (int j = 0; j < L; ++j) {
      m[static_cast<std::size_t>(rank) * L + j] =
          (m[static_cast<std::size_t>(rank) * L + j] * inv) % q;
    }
    for (int row = 0; row < K; ++row) {
      if (row == rank) continue;
      const int f = m[static_cast<std::size_t>(row) * L + col] % q;
      if (f == 0) continue;
      for (int j = 0; j < L; ++j) {
        int v = m[static_cast<std::size_t>(row) * L + j] -
                f * m[static_cast<std::size_t>(rank) * L + j];
        v %= q;
        if (v < 0) v += q;
        m[static_cast<std::size_t>(row) * L + j] = v;
      }
    }
    ++rank;
  }
  return rank;
}

LinearCode::LinearCode(int q, int K, int L, std::vector<int> generator)
    : q_(q), K_(K), L_(L), gen_(std::move(generator)) {
  if (q_ < 2) throw std::invalid_argument("code alphabet must have q >= 2");
  if (K_ < 1 || L_ < 1) throw std::invalid_argument("code dimensions must be positive");
  if (K_ > L_) throw std::invalid_argument("K must not exceed L");
  if (gen_.size() != static_cast<std::size_t>(K_) * L_) {
    throw std::invalid_argument("generator must have K*L entries");
  }
  for (int v : gen_) {
    if (v < 0 || v >= q_) throw std::invalid_argument("generator entries must lie in [0, q)");
  }
  T_ = checked_pow(q_, K_, 1ULL << 62);
  if (T_ > (1ULL << 62)) throw CapabilityError("q^K exceeds the representable codebook size");

  if (is_prime(q_)) {
    full_rank_ = rank_mod_prime(gen_, K_, L_, q_) == K_;
  } else if (T_ <= 100000) {
    full_rank_ = distinct_codewords_by_enumeration(*this);
  } else {
    full_rank_ = false;
  }
}

void LinearCode::encode(std::uint64_t message, std::span<int> out) const {
  if (message >= T_) throw std::invalid_argument("message index out of range");
  if (out.size() != static_cast<std::size_t>(L_)) {
    throw std::invalid_argument("codeword buffer must have length L");
  }
  std::fill(out.begin(), out.end(), 0);
  std::uint64_t m = message;
  for (int k = 0; k < K_ && m != 0; ++k) {
    const int digit = static_cast<int>(m % q_);
    m /= q_;
    if (digit == 0) continue;
    for (int l = 0; l < L_; ++l) {
      out[l] = (out[l] + digit * generator_at(k, l)) % q_;
    }
  }
}

std::vector<int> LinearCode::encode(std::uint64_t message) const {
  std::vector<int> out(L_);
  encode(message, out);
  return out;
}

LinearCode sample_generator(int q, int K, int L, Rng& rng, bool require_full_rank) {
  if (K > L) throw std::invalid_argument("K must not exceed L");
  if (require_full_rank && !is_prime(q)) {
    throw std::invalid_argument(
        "require_full_rank needs a prime alphabet size for rank computation");
  }
  std::vector<int> gen(static_cast<std::size_t>(K) * L);
  for (;;) {
    for (auto& v : gen) v = static_cast<int>(rng.next_below(q));
    if (!require_full_rank || rank_mod_prime(gen, K, L, q) == K) {
      return LinearCode(q, K, L, gen);
    }
  }
}

CodeTable::CodeTable(const LinearCode& code)
    : q_(code.q()), L_(code.block_length()), T_(code.codebook_size()) {
  if (T_ > 1000000) throw CapabilityError("codebook too large to materialize");
  words_.resize(T_ * static_cast<std::size_t>(L_));
  std::vector<int> buf(L_);
  for (std::uint64_t m = 0; m < T_; ++m) {
    code.encode(m, buf);
    std::copy(buf.begin(), buf.end(), words_.begin() + m * L_);
  }
}

bool CodeTable::distinct_words() const {
  std::vector<std::vector<int>> copies;
  copies.reserve(T_);
  for (std::uint64_t m = 0; m < T_; ++m) {
    copies.emplace_back(word(m).begin(), word(m).end());
  }
  std::sort(copies.begin(), copies.end());
  return std::adjacent_find(copies.begin(), copies.end()) == copies.end();
}

namespace {

void check_output_vector(const Channel& channel, std::span<const int> y_vec, int L) {
  if (static_cast<int>(y_vec.size()) != L) {
    throw std::invalid_argument("received vector length must equal the block length");
  }
  for (int y : y_vec) {
    if (y < 0 || y >= channel.output_size()) {
      throw std::invalid_argument("received symbol out of the channel output range");
    }
  }
}

}  // namespace

ZueOutcome zue_decode(const CodeTable& table, const Channel& channel,
                      std::span<const int> y_vec) {
  if (table.q() != channel.input_size()) {
    throw std::invalid_argument("code alphabet does not match the channel input alphabet");
  }
  check_output_vector(channel, y_vec, table.block_length());

  const int L = table.block_length();
  std::uint64_t feasible_message = 0;
  int feasible_count = 0;
  for (std::uint64_t m = 0; m < table.size(); ++m) {
    const int* w = table.word(m).data();
    bool feasible = true;
    for (int i = 0; i < L; ++i) {
      if (!channel.in_support(w[i], y_vec[i])) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      if (++feasible_count == 2) return {true, 0};
      feasible_message = m;
    }
  }
  if (feasible_count == 1) return {false, feasible_message};
  return {true, 0};
}

ZueOutcome zue_decode(const LinearCode& code, const Channel& channel,
                      std::span<const int> y_vec) {
  if (code.q() != channel.input_size()) {
    throw std::invalid_argument("code alphabet does not match the channel input alphabet");
  }
  check_output_vector(channel, y_vec, code.block_length());

  const int L = code.block_length();
  std::vector<int> word(L);
  std::uint64_t feasible_message = 0;
  int feasible_count = 0;
  for (std::uint64_t m = 0; m < code.codebook_size(); ++m) {
    code.encode(m, word);
    bool feasible = true;
    for (int i = 0; i < L; ++i) {
      if (!channel.in_support(word[i], y_vec[i])) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      if (++feasible_count == 2) return {true, 0};
      feasible_message = m;
    }
  }
  if (feasible_count == 1) return {false, feasible_message};
  return {true, 0};
}

namespace {

// Depth-first enumeration of the output space. probs[level][m] carries the
// running likelihood of the length-`level` output prefix under codeword m;
// subtrees where every codeword has zero likelihood are pruned.
struct ExactEnumerator {
  const Channel& channel;
  const CodeTable& table;
  int L;
  std::uint64_t T;
  std::vector<std::vector<double>> probs;
  std::vector<double> erasure_prob;
  DecodeStats stats;

  ExactEnumerator(const Channel& ch, const CodeTable& tb)
      : channel(ch), table(tb), L(tb.block_length()), T(tb.size()) {
    probs.assign(L + 1, std::vector<double>(T, 0.0));
    std::fill(probs[0].begin(), probs[0].end(), 1.0);
    erasure_prob.assign(T, 0.0);
  }

  void run() { descend(0); }

  void descend(int level) {
    if (level == L) {
      leaf();
      return;
    }
    const auto& parent = probs[level];
    auto& child = probs[level + 1];
    for (int y = 0; y < channel.output_size(); ++y) {
      bool any = false;
      for (std::uint64_t m = 0; m < T; ++m) {
        const double p = parent[m] * channel.prob(table.word(m)[level], y);
        child[m] = p;
        any = any || p > 0.0;
      }
      if (any) descend(level + 1);
    }
  }

  void leaf() {
    const auto& p = probs[L];
    std::uint64_t feasible = 0;
    std::uint64_t unique_m = 0;
    for (std::uint64_t m = 0; m < T; ++m) {
      if (p[m] > 0.0) {
        ++feasible;
        unique_m = m;
      }
    }
    // Each message with positive likelihood is one possible transmission.
    stats.decodes += feasible;
    if (feasible == 1) {
      // Decoded output is unique_m; count any transmitter it mismatches.
      for (std::uint64_t m = 0; m < T; ++m) {
        if (p[m] > 0.0 && m != unique_m) ++stats.undetected;
      }
      return;
    }
    for (std::uint64_t m = 0; m < T; ++m) {
      if (p[m] > 0.0) erasure_prob[m] += p[m];
    }
  }
};

void check_enumeration_budget(const Channel& channel, int L) {
  double total = 1.0;
  for (int i = 0; i < L; ++i) total *= channel.output_size();
  if (total > kExactEnumerationBudget) {
    throw CapabilityError("output space exceeds the exact enumeration budget of 1e7");
  }
}

}  // namespace

std::vector<double> erasure_prob_exact_all(const LinearCode& code, const Channel& channel,
                                           DecodeStats* stats) {
  if (code.q() != channel.input_size()) {
    throw std::invalid_argument("code alphabet does not match the channel input alphabet");
  }
  check_enumeration_budget(channel, code.block_length());
  CodeTable table(code);
  ExactEnumerator en(channel, table);
  en.run();
  if (stats) stats->merge(en.stats);
  return en.erasure_prob;
}

double erasure_prob_exact(const LinearCode& code, const Channel& channel,
                          std::uint64_t transmitted, DecodeStats* stats) {
  if (transmitted >= code.codebook_size()) {
    throw std::invalid_argument("message index out of range");
  }
  return erasure_prob_exact_all(code, channel, stats)[transmitted];
}

double wilson_half_width_95(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  return z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

McEstimate erasure_prob_mc(const LinearCode& code, const Channel& channel,
                           std::uint64_t transmitted, std::uint64_t trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (transmitted >= code.codebook_size()) {
    throw std::invalid_argument("message index out of range");
  }
  CodeTable table(code);
  const int L = code.block_length();
  const auto word = table.word(transmitted);
  std::vector<int> y(L);

  McEstimate out;
  out.trials = trials;
  std::uint64_t erasures = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    channel.sequence(word, y, rng);
    const ZueOutcome res = zue_decode(table, channel, y);
    ++out.stats.decodes;
    if (res.erasure) {
      ++erasures;
    } else if (res.message != transmitted) {
      ++out.stats.undetected;
    }
  }
  if (out.stats.undetected != 0) {
    throw InvariantError(
        "zero-undetected-error decoding returned a wrong codeword; this must "
        "be impossible for a correctly configured channel");
  }
  out.estimate = static_cast<double>(erasures) / static_cast<double>(trials);
  out.half_width_95 = wilson_half_width_95(erasures, trials);
  return out;
}

EnsembleEstimate ensemble_erasure_prob(int q, int K, int L, const Channel& channel,
                                       int n_codes, std::uint64_t trials_per_code,
                                       std::uint64_t master_seed, int threads,
                                       bool require_full_rank) {
  if (n_codes < 1) throw std::invalid_argument("n_codes must be at least 1");
  if (trials_per_code < 1) throw std::invalid_argument("trials_per_code must be at least 1");
  if (q != channel.input_size()) {
    throw std::invalid_argument("code alphabet does not match the channel input alphabet");
  }
  require_symmetric(channel);

  std::vector<double> estimates(n_codes, 0.0);
  std::vector<DecodeStats> stats(n_codes);

  parallel_for(static_cast<std::uint64_t>(n_codes), threads, [&](std::uint64_t c) {
    Rng code_rng = substream(master_seed, kStreamCodeSample, c);
    const LinearCode code = sample_generator(q, K, L, code_rng, require_full_rank);
    Rng trial_rng = substream(master_seed, kStreamTrialBase + c);
    // Message fixed to 0: valid by message independence on symmetric channels.
    const McEstimate est = erasure_prob_mc(code, channel, 0, trials_per_code, trial_rng);
    estimates[c] = est.estimate;
    stats[c] = est.stats;
  });

  EnsembleEstimate out;
  out.n_codes = n_codes;
  out.trials_per_code = trials_per_code;
  double sum = 0.0;
  for (int c = 0; c < n_codes; ++c) {
    sum += estimates[c];
    out.stats.merge(stats[c]);
  }
  out.mean = sum / n_codes;
  if (n_codes > 1) {
    double ss = 0.0;
    for (double e : estimates) ss += (e - out.mean) * (e - out.mean);
    out.std_error = std::sqrt(ss / (n_codes - 1)) / std::sqrt(static_cast<double>(n_codes));
  }
  return out;
}

double theorem2_bound(const Channel& channel, int L, double rate) {
  if (L < 0) throw std::invalid_argument("block length must be non-negative");
  // The ensemble bound exp{-L (e0(rho) - rho R)} is derived through
  // P(union) <= (sum P)^rho, which holds only for rho in (0, 1]; the
  // supremum here is therefore taken over that interval. (The unrestricted
  // exponent can exceed the achievable region: on the identity channel it
  // grows without bound while rank-deficient generators keep the ensemble
  // erasure probability strictly positive.)
  const ExponentResult res = erasure_exponent(channel, rate, 1.0);
  const double bound = std::exp(-static_cast<double>(L) * res.exponent);
  return std::min(1.0, std::max(0.0, bound));
}

double message_independence_check(const LinearCode& code, const Channel& channel,
                                  DecodeStats* stats) {
  require_symmetric(channel);
  const std::vector<double> per_message = erasure_prob_exact_all(code, channel, stats);
  double lo = per_message.front(), hi = per_message.front();
  for (double v : per_message) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

}  // namespace shortmol
