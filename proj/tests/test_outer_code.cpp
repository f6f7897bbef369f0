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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include "channel.hpp"
#include "exponents.hpp"
#include "outer_code.hpp"

using namespace shortmol;

namespace {

// One-sample Kolmogorov-Smirnov test at the 1% level.
bool ks_passes(std::vector<double> samples, double (*cdf)(double)) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  const double critical = 1.6276 / std::sqrt(n);
  return d <= critical;
}

}  // namespace

TEST_CASE("uniform simplex sampling") {
  SUBCASE("coordinate means are 1/T") {
    const int T = 5;
    Rng rng(2024);
    const int n = 100000;
    std::vector<double> mean(T, 0.0);
    for (int i = 0; i < n; ++i) {
      const auto p = sample_dirichlet_uniform(T, rng);
      for (int t = 0; t < T; ++t) mean[t] += p[t];
    }
    // Var of a coordinate is (T-1)/(T^2 (T+1)).
    const double sigma = std::sqrt((T - 1.0) / (T * T * (T + 1.0)) / n);
    for (int t = 0; t < T; ++t) {
      CHECK(std::fabs(mean[t] / n - 1.0 / T) <= 3.0 * sigma);
    }
  }
  SUBCASE("first coordinate follows the Beta(1, T-1) law") {
    struct Case {
      int T;
      double (*cdf)(double);
    };
    const Case cases[] = {
        {2, [](double x) { return x; }},
        {3, [](double x) { return 1.0 - (1.0 - x) * (1.0 - x); }},
        {8, [](double x) { return 1.0 - std::pow(1.0 - x, 7.0); }},
    };
    for (const auto& c : cases) {
      Rng rng(555 + c.T);
      std::vector<double> samples;
      samples.reserve(10000);
      for (int i = 0; i < 10000; ++i) {
        samples.push_back(sample_dirichlet_uniform(c.T, rng)[0]);
      }
      CHECK(ks_passes(std::move(samples), c.cdf));
    }
  }
  SUBCASE("domain") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_dirichlet_uniform(1, rng), std::invalid_argument);
  }
}

TEST_CASE("quantization") {
  SUBCASE("uniform PMF with divisible M") {
    const std::vector<double> p(4, 0.25);
    const OuterCodeword w = quantize(p, 100);
    for (int t = 0; t < 4; ++t) {
      CHECK(w.counts[t] == 25);
      CHECK(w.pmf[t] == 0.25);
    }
  }
  SUBCASE("exact floors") {
    const std::vector<double> p{0.7, 0.3};
    const OuterCodeword w = quantize(p, 10);
    CHECK(w.counts == std::vector<std::int64_t>{7, 3});
    CHECK(w.pmf == std::vector<double>{0.7, 0.3});
  }
  SUBCASE("floor loss renormalizes") {
    const std::vector<double> p{0.55, 0.45};
    const OuterCodeword w = quantize(p, 3);
    CHECK(w.counts == std::vector<std::int64_t>{1, 1});
    CHECK(w.pmf == std::vector<double>{0.5, 0.5});
  }
  SUBCASE("M must exceed T") {
    const std::vector<double> p{0.5, 0.5};
    CHECK_THROWS_AS(quantize(p, 2), std::invalid_argument);
    CHECK_NOTHROW(quantize(p, 3));
  }
  SUBCASE("count totals stay within the floor-loss bound") {
    Rng rng(808);
    const int T = 10;
    const std::int64_t M = 100;
    double total_sum = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const OuterCodeword w = quantize(sample_dirichlet_uniform(T, rng), M);
      REQUIRE(w.total >= M - T);
      REQUIRE(w.total <= M);
      total_sum += static_cast<double>(w.total);
      double s = 0.0;
      for (int t = 0; t < T; ++t) {
        CHECK((w.pmf[t] == 0.0) == (w.counts[t] == 0));
        s += w.pmf[t];
      }
      CHECK(std::fabs(s - 1.0) <= 1e-12);
    }
    CHECK(total_sum / 1000.0 >= M - T);
    CHECK(total_sum / 1000.0 <= M);
  }
}

TEST_CASE("codebook construction and serialization") {
  SUBCASE("singleton") {
    const OuterCodebook cb = build_codebook(1, 4, 50, 7);
    CHECK(cb.words.size() == 1);
    CHECK(cb.seed == 7);
  }
  SUBCASE("equal seeds give identical codebooks") {
    const OuterCodebook a = build_codebook(20, 6, 300, 12345);
    const OuterCodebook b = build_codebook(20, 6, 300, 12345);
    REQUIRE(a.words.size() == b.words.size());
    for (std::size_t i = 0; i < a.words.size(); ++i) {
      CHECK(a.words[i].counts == b.words[i].counts);
    }
    const OuterCodebook c = build_codebook(20, 6, 300, 54321);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.words.size(); ++i) {
      any_diff = any_diff || a.words[i].counts != c.words[i].counts;
    }
    CHECK(any_diff);
  }
  SUBCASE("save/load round trip") {
    const OuterCodebook a = build_codebook(8, 5, 120, 99);
    const std::string path = "codebook_roundtrip_test.json";
    save_codebook(a, path);
    const OuterCodebook b = load_codebook(path);
    std::remove(path.c_str());
    CHECK(b.M == a.M);
    CHECK(b.T == a.T);
    CHECK(b.seed == a.seed);
    REQUIRE(b.words.size() == a.words.size());
    for (std::size_t i = 0; i < a.words.size(); ++i) {
      CHECK(b.words[i].counts == a.words[i].counts);
      CHECK(b.words[i].pmf == a.words[i].pmf);
    }
  }
}

TEST_CASE("divergences") {
  SUBCASE("KL basics") {
    const std::vector<double> p{0.5, 0.5};
    CHECK(kl_divergence(p, p) == 0.0);
    CHECK(kl_divergence(std::vector<double>{1.0, 0.0}, p) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(kl_divergence(p, std::vector<double>{1.0, 0.0}) ==
          std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(kl_divergence(p, std::vector<double>{1.0}), std::invalid_argument);
  }
  SUBCASE("chi-square basics") {
    const std::vector<double> q{0.7, 0.3};
    const std::vector<double> p{0.5, 0.5};
    CHECK(chi_square(q, q) == 0.0);
    CHECK(chi_square(q, p) == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(chi_square(p, std::vector<double>{1.0, 0.0}) ==
          std::numeric_limits<double>::infinity());
  }
  SUBCASE("KL is dominated by chi-square on common support") {
    Rng rng(31415);
    for (int i = 0; i < 10000; ++i) {
      const int n = 2 + static_cast<int>(rng.next_below(7));
      const auto q = sample_dirichlet_uniform(n, rng);
      const auto p = sample_dirichlet_uniform(n, rng);
      REQUIRE(kl_divergence(q, p) <= chi_square(q, p) + 1e-12);
    }
  }
}

TEST_CASE("minimum-KL decoding") {
  SUBCASE("exact codeword matches with zero divergence") {
    const OuterCodebook cb = build_codebook(32, 6, 500, 4);
    for (int m = 0; m < 32; ++m) {
      const KlDecodeResult res = kl_decode(cb, cb.words[m].pmf);
      CHECK(res.index == m);
      CHECK(res.divergence == 0.0);
    }
  }
  SUBCASE("hand example") {
    OuterCodebook cb;
    cb.M = 10;
    cb.T = 2;
    cb.words.push_back({{7, 3}, {0.7, 0.3}, 10});
    cb.words.push_back({{2, 8}, {0.2, 0.8}, 10});
    const std::vector<double> q{0.6, 0.4};
    const KlDecodeResult res = kl_decode(cb, q);
    CHECK(res.index == 0);
    // By hand: 0.6 log(0.6/0.7) + 0.4 log(0.4/0.3) and 0.6 log 3 - 0.4 log 2.
    CHECK(res.divergence == doctest::Approx(0.022582421084357485).epsilon(1e-10));
    CHECK(kl_divergence(q, cb.words[1].pmf) ==
          doctest::Approx(0.6 * std::log(3.0) - 0.4 * std::log(2.0)).epsilon(1e-12));
    CHECK(res.tie_count == 0);
  }
  SUBCASE("ties go to the lowest index and are counted") {
    OuterCodebook cb;
    cb.M = 10;
    cb.T = 2;
    cb.words.push_back({{5, 5}, {0.5, 0.5}, 10});
    cb.words.push_back({{5, 5}, {0.5, 0.5}, 10});
    const KlDecodeResult res = kl_decode(cb, std::vector<double>{0.5, 0.5});
    CHECK(res.index == 0);
    CHECK(res.tie_count == 1);
    CHECK_FALSE(res.all_infinite);
  }
  SUBCASE("all-infinite case is flagged") {
    OuterCodebook cb;
    cb.M = 10;
    cb.T = 2;
    cb.words.push_back({{10, 0}, {1.0, 0.0}, 10});
    cb.words.push_back({{0, 10}, {0.0, 1.0}, 10});
    const KlDecodeResult res = kl_decode(cb, std::vector<double>{0.5, 0.5});
    CHECK(res.index == 0);
    CHECK(res.all_infinite);
  }
  SUBCASE("length mismatch") {
    const OuterCodebook cb = build_codebook(4, 3, 100, 1);
    CHECK_THROWS_AS(kl_decode(cb, std::vector<double>{0.5, 0.5}), std::invalid_argument);
  }
}

TEST_CASE("codebook-size and coverage-scaling formulas") {
  SUBCASE("theorem-3 log size") {
    CHECK_THROWS_AS(theorem3_log_codebook_size(100, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(theorem3_log_codebook_size(100, 10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(theorem3_log_codebook_size(10, 10, 0.25), std::invalid_argument);
    const int T = 12;
    CHECK(theorem3_log_codebook_size(T * std::exp(1.0), T, 0.25) ==
          doctest::Approx(T / 4.0).epsilon(1e-12));
    double prev = theorem3_log_codebook_size(50, 10, 0.1);
    for (double M : {100.0, 200.0, 400.0}) {
      const double cur = theorem3_log_codebook_size(M, 10, 0.1);
      CHECK(cur > prev);
      prev = cur;
    }
  }
  SUBCASE("identity channel reproduces the noiseless coverage formula") {
    const Channel ch = Channel::identity(4);
    const double beta = 0.5 / std::log(4.0);
    for (double M : {100.0, 10000.0}) {
      const double expected =
          (1.0 - beta * std::log(4.0)) / 2.0 * std::pow(M, beta * std::log(4.0)) * std::log(M);
      CHECK(psi_lower_bound(M, beta, ch) == expected);
    }
  }
  SUBCASE("full-support channel gives log(M)/2") {
    const Channel ch = Channel::qary_symmetric(2, 0.2);
    CHECK(psi_lower_bound(1000.0, 0.5, ch) ==
          doctest::Approx(0.5 * std::log(1000.0)).epsilon(1e-15));
  }
  SUBCASE("typewriter evaluation against an inline form") {
    const Channel ch = Channel::typewriter(0.5);
    const double beta = 0.5 / std::log(3.0);
    const double r = std::log(1.5);
    const double M = 1e4;
    CHECK(psi_lower_bound(M, beta, ch) ==
          doctest::Approx(0.5 * (1.0 - beta * r) * std::pow(M, beta * r) * std::log(M))
              .epsilon(1e-15));
  }
  SUBCASE("beta range is enforced") {
    const Channel ch = Channel::identity(2);
    CHECK_THROWS_AS(psi_lower_bound(100.0, 1.5, ch), std::invalid_argument);
    CHECK_THROWS_AS(psi_lower_bound(100.0, 0.0, ch), std::invalid_argument);
    CHECK_THROWS_AS(psi_lower_bound(1.0, 0.5, ch), std::invalid_argument);
  }
}
