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

#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "exponents.hpp"
#include "linear_code.hpp"

using namespace shortmol;

namespace {

// No-early-exit reference for the decode rule: collect every feasible
// codeword, decide from the full list.
ZueOutcome reference_decode(const LinearCode& code, const Channel& ch,
                            const std::vector<int>& y) {
  std::vector<std::uint64_t> feasible;
  for (std::uint64_t m = 0; m < code.codebook_size(); ++m) {
    const auto w = code.encode(m);
    bool ok = true;
    for (int i = 0; i < code.block_length(); ++i) {
      ok = ok && ch.in_support(w[i], y[i]);
    }
    if (ok) feasible.push_back(m);
  }
  if (feasible.size() == 1) return {false, feasible.front()};
  return {true, 0};
}

}  // namespace

TEST_CASE("encoding") {
  SUBCASE("message zero is the all-zero codeword") {
    const LinearCode code(3, 2, 4, {1, 2, 0, 1, 0, 1, 2, 2});
    CHECK(code.encode(0) == std::vector<int>{0, 0, 0, 0});
  }
  SUBCASE("single-row generator") {
    const LinearCode code(2, 1, 3, {1, 1, 0});
    CHECK(code.encode(1) == std::vector<int>{1, 1, 0});
  }
  SUBCASE("digits are little-endian base q") {
    const LinearCode code(3, 2, 2, {1, 0, 0, 1});
    // message 5 = 1*3 + 2 -> digits (2, 1) -> 2*row0 + 1*row1
    CHECK(code.encode(5) == std::vector<int>{2, 1});
    std::set<std::vector<int>> words;
    for (std::uint64_t m = 0; m < 9; ++m) words.insert(code.encode(m));
    CHECK(words.size() == 9);  // bijective
  }
  SUBCASE("encode is a bijection for random full-rank codes") {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
      const int q = rep % 2 == 0 ? 2 : 3;
      const LinearCode code = sample_generator(q, 3, 5, rng, true);
      REQUIRE(code.full_rank());
      std::set<std::vector<int>> words;
      for (std::uint64_t m = 0; m < code.codebook_size(); ++m) {
        words.insert(code.encode(m));
      }
      CHECK(words.size() == code.codebook_size());
    }
  }
  SUBCASE("domain") {
    const LinearCode code(2, 1, 3, {1, 1, 0});
    CHECK_THROWS_AS(code.encode(2), std::invalid_argument);
    CHECK_THROWS_AS(LinearCode(2, 3, 2, {1, 1, 0, 1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(LinearCode(2, 1, 3, {1, 2, 0}), std::invalid_argument);
  }
}

TEST_CASE("generator sampling") {
  SUBCASE("tiny generators are uniform over all matrices") {
    Rng rng(2);
    const int draws = 80000;
    std::vector<int> counts(8, 0);
    for (int i = 0; i < draws; ++i) {
      const LinearCode code = sample_generator(2, 1, 3, rng, false);
      const auto& g = code.generator();
      ++counts[g[0] | (g[1] << 1) | (g[2] << 2)];
    }
    const double expected = draws / 8.0;
    const double sigma = std::sqrt(draws * (1.0 / 8) * (7.0 / 8));
    for (int c : counts) CHECK(std::fabs(c - expected) <= 4.0 * sigma);
  }
  SUBCASE("entries are uniform") {
    Rng rng(17);
    double sum = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws / 12; ++i) {
      const LinearCode code = sample_generator(4, 3, 4, rng, false);
      for (int v : code.generator()) sum += v;
    }
    const int n = (draws / 12) * 12;
    const double mean = sum / n;
    const double sigma = std::sqrt(1.25 / n);  // Var of uniform{0..3} = 1.25
    CHECK(std::fabs(mean - 1.5) <= 3.0 * sigma);
  }
  SUBCASE("full-rank never returns the all-zero row") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
      const LinearCode code = sample_generator(2, 1, 3, rng, true);
      CHECK(code.generator() != std::vector<int>{0, 0, 0});
    }
  }
  SUBCASE("full-rank flag needs a prime alphabet") {
    Rng rng(5);
    CHECK_THROWS_AS(sample_generator(4, 1, 3, rng, true), std::invalid_argument);
    CHECK_NOTHROW(sample_generator(4, 1, 3, rng, false));
  }
  SUBCASE("K > L rejected") {
    Rng rng(5);
    CHECK_THROWS_AS(sample_generator(2, 4, 3, rng, false), std::invalid_argument);
  }
}

TEST_CASE("zero-undetected-error decoding") {
  SUBCASE("identity channel decodes every message") {
    const Channel ch = Channel::identity(3);
    Rng rng(23);
    const LinearCode code = sample_generator(3, 2, 4, rng, true);
    for (std::uint64_t m = 0; m < code.codebook_size(); ++m) {
      const auto out = zue_decode(code, ch, code.encode(m));
      REQUIRE_FALSE(out.erasure);
      CHECK(out.message == m);
    }
  }
  SUBCASE("all-erased output erases") {
    const Channel ch = Channel::erasure(2, 0.5);
    const LinearCode code(2, 1, 2, {1, 1});
    const std::vector<int> y{2, 2};
    CHECK(zue_decode(code, ch, y).erasure);
  }
  SUBCASE("repetition code over the erasure channel") {
    const Channel ch = Channel::erasure(2, 0.5);
    const LinearCode code(2, 1, 2, {1, 1});  // codewords 00 and 11
    const auto out = zue_decode(code, ch, std::vector<int>{0, 2});
    REQUIRE_FALSE(out.erasure);
    CHECK(out.message == 0);
    const auto out2 = zue_decode(code, ch, std::vector<int>{2, 1});
    REQUIRE_FALSE(out2.erasure);
    CHECK(out2.message == 1);
  }
  SUBCASE("alphabet mismatch") {
    const Channel ch = Channel::identity(3);
    const LinearCode code(2, 1, 2, {1, 1});
    CHECK_THROWS_AS(zue_decode(code, ch, std::vector<int>{0, 0}), std::invalid_argument);
  }
  SUBCASE("agrees with the no-early-exit reference") {
    const Channel channels[] = {Channel::erasure(2, 0.6), Channel::typewriter(0.5)};
    Rng rng(71);
    for (const Channel& ch : channels) {
      const int q = ch.input_size();
      const LinearCode code = sample_generator(q, 2, 5, rng, false);
      const CodeTable table(code);
      std::vector<int> x(5), y(5);
      for (int t = 0; t < 5000; ++t) {
        const std::uint64_t m = rng.next_below(code.codebook_size());
        code.encode(m, x);
        ch.sequence(x, y, rng);
        const ZueOutcome fast = zue_decode(table, ch, y);
        const ZueOutcome ref = reference_decode(code, ch, y);
        CHECK(fast.erasure == ref.erasure);
        if (!fast.erasure) CHECK(fast.message == ref.message);
      }
    }
  }
}

TEST_CASE("exact erasure probability") {
  SUBCASE("identity channel, full-rank code") {
    const Channel ch = Channel::identity(2);
    Rng rng(3);
    const LinearCode code = sample_generator(2, 2, 4, rng, true);
    for (std::uint64_t m = 0; m < 4; ++m) {
      CHECK(erasure_prob_exact(code, ch, m) == 0.0);
    }
  }
  SUBCASE("repetition code over the erasure channel erases iff fully erased") {
    for (double p : {0.3, 0.7}) {
      for (int L : {2, 3, 4}) {
        const Channel ch = Channel::erasure(2, p);
        const LinearCode code(2, 1, L, std::vector<int>(L, 1));
        const double expected = std::pow(p, L);
        CHECK(std::fabs(erasure_prob_exact(code, ch, 0) - expected) <= 1e-12);
        CHECK(std::fabs(erasure_prob_exact(code, ch, 1) - expected) <= 1e-12);
      }
    }
  }
  SUBCASE("full-support channel always erases") {
    const Channel ch = Channel::qary_symmetric(2, 0.2);
    const LinearCode code(2, 1, 3, {1, 0, 1});
    CHECK(erasure_prob_exact(code, ch, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("enumeration budget") {
    const Channel ch = Channel::erasure(2, 0.5);
    const LinearCode code(2, 1, 30, std::vector<int>(30, 1));
    CHECK_THROWS_AS(erasure_prob_exact(code, ch, 0), CapabilityError);
  }
  SUBCASE("structural guarantee counters accumulate") {
    const Channel ch = Channel::erasure(2, 0.4);
    const LinearCode code(2, 2, 4, {1, 0, 1, 1, 0, 1, 1, 0});
    DecodeStats stats;
    erasure_prob_exact_all(code, ch, &stats);
    CHECK(stats.decodes > 0);
    CHECK(stats.undetected == 0);
  }
}

TEST_CASE("Monte Carlo erasure probability") {
  SUBCASE("identity channel gives exactly zero") {
    const Channel ch = Channel::identity(2);
    Rng rng(11);
    const LinearCode code = sample_generator(2, 2, 5, rng, true);
    Rng mc(12);
    const McEstimate est = erasure_prob_mc(code, ch, 0, 2000, mc);
    CHECK(est.estimate == 0.0);
    CHECK(est.stats.undetected == 0);
  }
  SUBCASE("estimate covers the exact value") {
    const Channel ch = Channel::erasure(2, 0.3);
    const LinearCode code(2, 1, 4, {1, 1, 1, 1});
    const double exact = erasure_prob_exact(code, ch, 0);  // 0.3^4
    CHECK(exact == doctest::Approx(0.0081).epsilon(1e-12));
    Rng mc(13);
    const McEstimate est = erasure_prob_mc(code, ch, 0, 50000, mc);
    CHECK(std::fabs(est.estimate - exact) <= est.half_width_95);
  }
  SUBCASE("message-independent estimates overlap") {
    const Channel ch = Channel::typewriter(0.5);
    Rng rng(17);
    const LinearCode code = sample_generator(3, 1, 4, rng, true);
    Rng mc0(101), mc1(202);
    const McEstimate a = erasure_prob_mc(code, ch, 0, 20000, mc0);
    const McEstimate b = erasure_prob_mc(code, ch, 1, 20000, mc1);
    CHECK(std::fabs(a.estimate - b.estimate) <= a.half_width_95 + b.half_width_95);
  }
}

TEST_CASE("ensemble erasure probability") {
  SUBCASE("identity channel: raw ensemble pays for rank-deficient draws") {
    // q=2, K=1, L=3. The all-zero generator (1 of 8) duplicates codewords and
    // always erases; the other 7 never do. Exact ensemble mean = 1/8.
    const Channel ch = Channel::identity(2);
    double exact_mean = 0.0;
    for (int bits = 0; bits < 8; ++bits) {
      const LinearCode code(2, 1, 3, {bits & 1, (bits >> 1) & 1, (bits >> 2) & 1});
      exact_mean += erasure_prob_exact(code, ch, 0) / 8.0;
    }
    CHECK(exact_mean == doctest::Approx(0.125).epsilon(1e-12));
    const EnsembleEstimate est = ensemble_erasure_prob(2, 1, 3, ch, 400, 50, 99);
    CHECK(std::fabs(est.mean - exact_mean) <= 4.0 * est.std_error);
    CHECK(est.stats.undetected == 0);
  }
  SUBCASE("Monte Carlo agrees with the exact ensemble average") {
    const Channel ch = Channel::erasure(2, 0.4);
    const int K = 1, L = 4;
    // Exact ensemble average over all 16 generators.
    double exact_mean = 0.0;
    for (int bits = 0; bits < 16; ++bits) {
      const LinearCode code(2, K, L,
                            {bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1});
      exact_mean += erasure_prob_exact(code, ch, 0) / 16.0;
    }
    const EnsembleEstimate est = ensemble_erasure_prob(2, K, L, ch, 300, 200, 424242);
    CHECK(std::fabs(est.mean - exact_mean) <= 4.0 * est.std_error);
  }
  SUBCASE("estimate respects the exponential bound") {
    const Channel ch = Channel::erasure(2, 0.2);
    const int K = 2, L = 10;
    const double rate = K * std::log(2.0) / L;
    const EnsembleEstimate est = ensemble_erasure_prob(2, K, L, ch, 200, 500, 11, 4);
    CHECK(est.mean <= theorem2_bound(ch, L, rate) + 3.0 * est.std_error);
  }
  SUBCASE("asymmetric channels are refused with an explanation") {
    const Channel ch = Channel::from_matrix({{0.9, 0.1}, {0.5, 0.5}});
    CHECK_THROWS_WITH_AS(ensemble_erasure_prob(2, 1, 3, ch, 10, 10, 1),
                         doctest::Contains("not symmetric"), std::invalid_argument);
  }
  SUBCASE("deterministic across thread counts") {
    const Channel ch = Channel::erasure(2, 0.3);
    const EnsembleEstimate a = ensemble_erasure_prob(2, 2, 6, ch, 50, 100, 7, 1);
    const EnsembleEstimate b = ensemble_erasure_prob(2, 2, 6, ch, 50, 100, 7, 8);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
  }
}

TEST_CASE("theorem-2 bound") {
  const Channel ch = Channel::erasure(2, 0.5);
  SUBCASE("trivial cases") {
    CHECK(theorem2_bound(ch, 10, r_max(ch)) == 1.0);
    CHECK(theorem2_bound(ch, 10, 2.0 * r_max(ch)) == 1.0);
    CHECK(theorem2_bound(ch, 0, 0.1) == 1.0);
  }
  SUBCASE("matches exp(-L * exponent) with the rho cap at 1") {
    const double e = erasure_exponent(ch, 0.1, 1.0).exponent;
    CHECK(theorem2_bound(ch, 20, 0.1) == doctest::Approx(std::exp(-20.0 * e)).epsilon(1e-12));
    // The unrestricted exponent is larger, so its bound would be smaller.
    CHECK(erasure_exponent(ch, 0.1).exponent > e);
  }
  SUBCASE("bounds the exact ensemble average") {
    // Exhaustive ensemble: all 2^(K*L) generators, exact per-code erasure
    // probabilities, against the analytical bound.
    const Channel bec = Channel::erasure(2, 0.3);
    const int K = 1, L = 4;
    double mean = 0.0;
    for (int bits = 0; bits < 16; ++bits) {
      const LinearCode code(2, K, L,
                            {bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1});
      mean += erasure_prob_exact(code, bec, 0) / 16.0;
    }
    CHECK(mean <= theorem2_bound(bec, L, K * std::log(2.0) / L));
  }
}

TEST_CASE("message independence") {
  SUBCASE("exact over the erasure channel") {
    const Channel ch = Channel::erasure(2, 0.4);
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
      const LinearCode code = sample_generator(2, 1, 3, rng, false);
      CHECK(message_independence_check(code, ch) <= 1e-14);
    }
  }
  SUBCASE("exact over the typewriter channel") {
    const Channel ch = Channel::typewriter(0.5);
    Rng rng(4);
    for (int rep = 0; rep < 20; ++rep) {
      const LinearCode code = sample_generator(3, 1, 3, rng, false);
      CHECK(message_independence_check(code, ch) <= 1e-14);
    }
  }
  SUBCASE("desk-scale configurations, including composite q") {
    // The proof needs linearity and symmetry only, so composite alphabets
    // must satisfy it as well.
    const Channel ch4 = Channel::erasure(4, 0.35);
    Rng rng(5);
    for (int rep = 0; rep < 5; ++rep) {
      const LinearCode code = sample_generator(4, 2, 3, rng, false);
      CHECK(message_independence_check(code, ch4) <= 1e-12);
    }
  }
  SUBCASE("asymmetric channels are refused") {
    const Channel ch = Channel::from_matrix({{0.9, 0.1}, {0.5, 0.5}});
    const LinearCode code(2, 1, 2, {1, 1});
    CHECK_THROWS_AS(message_independence_check(code, ch), std::invalid_argument);
  }
}
