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

// Exercises the public C surface: handle lifecycles, error codes, file
// formats, and the command entry points (including the determinism contract
// across thread counts). Plain asserts; exits non-zero on the first failure.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "shortmol.h"

#define REQUIRE(cond)                                                              \
  do {                                                                             \
    if (!(cond)) {                                                                 \
      std::fprintf(stderr, "[FAIL] %s:%d: %s\n  last_error: %s\n", __FILE__,       \
                   __LINE__, #cond, shortmol_last_error());                        \
      std::exit(1);                                                                \
    }                                                                              \
  } while (0)

namespace {

std::string temp_path(const char* name) {
  return std::string("/tmp/shortmol_capi_") + std::to_string(::getpid()) + "_" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

void test_channels() {
  shortmol_channel* ch = nullptr;
  REQUIRE(shortmol_channel_erasure(4, 0.1, &ch) == SHORTMOL_OK);
  int32_t q = 0, outputs = 0, sym = -1, in_sup = -1, sup_size = -1;
  REQUIRE(shortmol_channel_input_size(ch, &q) == SHORTMOL_OK && q == 4);
  REQUIRE(shortmol_channel_output_size(ch, &outputs) == SHORTMOL_OK && outputs == 5);
  REQUIRE(shortmol_channel_is_symmetric(ch, &sym) == SHORTMOL_OK && sym == 1);
  REQUIRE(shortmol_channel_in_support(ch, 2, 4, &in_sup) == SHORTMOL_OK && in_sup == 1);
  REQUIRE(shortmol_channel_support_size(ch, 4, &sup_size) == SHORTMOL_OK && sup_size == 4);

  double prob = 0.0, rmax = 0.0;
  REQUIRE(shortmol_channel_prob(ch, 1, 1, &prob) == SHORTMOL_OK && prob == 0.9);
  REQUIRE(shortmol_r_max(ch, &rmax) == SHORTMOL_OK);
  REQUIRE(std::fabs(rmax - 0.9 * std::log(4.0)) <= 1e-12);

  // Domain errors surface as config status codes with messages.
  REQUIRE(shortmol_channel_prob(ch, 9, 0, &prob) == SHORTMOL_ERR_CONFIG);
  REQUIRE(std::strlen(shortmol_last_error()) > 0);
  shortmol_channel_free(ch);

  shortmol_channel* bad = nullptr;
  REQUIRE(shortmol_channel_erasure(4, 1.5, &bad) == SHORTMOL_ERR_CONFIG);

  // JSON loading path.
  shortmol_channel* from_json = nullptr;
  REQUIRE(shortmol_channel_from_json(
              R"({"q":2,"outputs":3,"rows":[["0.5","0","0.5"],["0","0.5","0.5"]]})",
              &from_json) == SHORTMOL_OK);
  int32_t sym2 = -1;
  REQUIRE(shortmol_channel_is_symmetric(from_json, &sym2) == SHORTMOL_OK && sym2 == 1);
  shortmol_channel_free(from_json);

  const std::string path = temp_path("channel.json");
  write_text(path, R"({"builtin":"typewriter","epsilon":0.5})");
  shortmol_channel* from_file = nullptr;
  REQUIRE(shortmol_channel_from_file(path.c_str(), &from_file) == SHORTMOL_OK);
  double e0 = -1.0;
  REQUIRE(shortmol_e0_tilde(from_file, 0.0, &e0) == SHORTMOL_OK && e0 == 0.0);
  double exponent = 0.0, rho_star = 0.0;
  int32_t saturated = -1;
  REQUIRE(shortmol_erasure_exponent(from_file, 0.2, 0.0, &exponent, &rho_star,
                                    &saturated) == SHORTMOL_OK);
  REQUIRE(exponent > 0.0);
  double lb = 0.0;
  REQUIRE(shortmol_typewriter_c0u_lower_bound(0.5, &lb) == SHORTMOL_OK);
  REQUIRE(std::fabs(lb - 0.5 * std::log(2.0)) <= 1e-15);
  shortmol_channel_free(from_file);
  std::remove(path.c_str());
}

void test_codes() {
  shortmol_channel* ch = nullptr;
  REQUIRE(shortmol_channel_erasure(2, 0.3, &ch) == SHORTMOL_OK);

  const int32_t gen[] = {1, 1, 1, 1};
  shortmol_code* rep = nullptr;
  REQUIRE(shortmol_code_create(2, 1, 4, gen, &rep) == SHORTMOL_OK);
  uint64_t size = 0;
  int32_t full_rank = 0;
  REQUIRE(shortmol_code_size(rep, &size) == SHORTMOL_OK && size == 2);
  REQUIRE(shortmol_code_full_rank(rep, &full_rank) == SHORTMOL_OK && full_rank == 1);

  int32_t word[4] = {0};
  REQUIRE(shortmol_code_encode(rep, 1, word) == SHORTMOL_OK);
  for (int i = 0; i < 4; ++i) REQUIRE(word[i] == 1);

  const int32_t received[] = {0, 2, 2, 2};  // one surviving position
  uint64_t message = 99;
  int32_t erasure = -1;
  REQUIRE(shortmol_zue_decode(rep, ch, received, &message, &erasure) == SHORTMOL_OK);
  REQUIRE(erasure == 0 && message == 0);

  double exact = -1.0;
  REQUIRE(shortmol_erasure_prob_exact(rep, ch, 0, &exact) == SHORTMOL_OK);
  REQUIRE(std::fabs(exact - 0.0081) <= 1e-12);
  double mc = -1.0, hw = -1.0;
  REQUIRE(shortmol_erasure_prob_mc(rep, ch, 0, 20000, 7, &mc, &hw) == SHORTMOL_OK);
  REQUIRE(std::fabs(mc - exact) <= hw + 1e-12);

  double mean = -1.0, se = -1.0;
  REQUIRE(shortmol_ensemble_erasure_prob(2, 1, 4, ch, 30, 100, 3, 2, 0, &mean, &se) ==
          SHORTMOL_OK);
  REQUIRE(mean >= 0.0 && mean <= 1.0);
  double bound = -1.0;
  REQUIRE(shortmol_theorem2_bound(ch, 4, std::log(2.0) / 4.0, &bound) == SHORTMOL_OK);
  REQUIRE(bound > 0.0 && bound <= 1.0);
  double mi = -1.0;
  REQUIRE(shortmol_message_independence(rep, ch, &mi) == SHORTMOL_OK);
  REQUIRE(mi <= 1e-14);

  // Composite alphabets cannot request the full-rank draw.
  shortmol_code* sampled = nullptr;
  REQUIRE(shortmol_code_sample(4, 1, 3, 9, 1, &sampled) == SHORTMOL_ERR_CONFIG);
  REQUIRE(shortmol_code_sample(3, 2, 5, 9, 1, &sampled) == SHORTMOL_OK);
  int32_t K = 0, L = 0;
  REQUIRE(shortmol_code_dimensions(sampled, &K, &L) == SHORTMOL_OK && K == 2 && L == 5);
  shortmol_code_free(sampled);
  shortmol_code_free(rep);
  shortmol_channel_free(ch);
}

void test_outer() {
  std::vector<double> p(6);
  REQUIRE(shortmol_sample_simplex_uniform(6, 11, p.data()) == SHORTMOL_OK);
  double sum = 0.0;
  for (double v : p) sum += v;
  REQUIRE(std::fabs(sum - 1.0) <= 1e-12);

  std::vector<int64_t> counts(6);
  std::vector<double> pmf(6);
  REQUIRE(shortmol_quantize(p.data(), 6, 500, counts.data(), pmf.data()) == SHORTMOL_OK);
  int64_t total = 0;
  for (auto c : counts) total += c;
  REQUIRE(total >= 494 && total <= 500);

  shortmol_codebook* cb = nullptr;
  REQUIRE(shortmol_codebook_build(12, 6, 500, 21, &cb) == SHORTMOL_OK);
  const std::string path = temp_path("codebook.json");
  REQUIRE(shortmol_codebook_save(cb, path.c_str()) == SHORTMOL_OK);
  shortmol_codebook* loaded = nullptr;
  REQUIRE(shortmol_codebook_load(path.c_str(), &loaded) == SHORTMOL_OK);
  std::remove(path.c_str());

  int32_t size = 0, T = 0;
  int64_t M = 0;
  uint64_t seed = 0;
  REQUIRE(shortmol_codebook_shape(loaded, &size, &T, &M, &seed) == SHORTMOL_OK);
  REQUIRE(size == 12 && T == 6 && M == 500 && seed == 21);
  std::vector<int64_t> c0(6), c0_loaded(6);
  REQUIRE(shortmol_codebook_counts(cb, 0, c0.data()) == SHORTMOL_OK);
  REQUIRE(shortmol_codebook_counts(loaded, 0, c0_loaded.data()) == SHORTMOL_OK);
  REQUIRE(c0 == c0_loaded);

  const double qv[] = {0.5, 0.5};
  const double pv[] = {1.0, 0.0};
  double kl = 0.0, c2 = 0.0;
  REQUIRE(shortmol_kl_divergence(pv, qv, 2, &kl) == SHORTMOL_OK);
  REQUIRE(std::fabs(kl - std::log(2.0)) <= 1e-15);
  REQUIRE(shortmol_chi_square(qv, pv, 2, &c2) == SHORTMOL_OK);
  REQUIRE(std::isinf(c2));

  std::vector<double> q_hat(6);
  REQUIRE(shortmol_codebook_counts(cb, 3, c0.data()) == SHORTMOL_OK);
  int64_t t3_total = 0;
  for (auto c : c0) t3_total += c;
  for (int i = 0; i < 6; ++i) {
    q_hat[i] = static_cast<double>(c0[i]) / static_cast<double>(t3_total);
  }
  int32_t index = -1, ties = -1;
  double div = -1.0;
  REQUIRE(shortmol_kl_decode(cb, q_hat.data(), &index, &div, &ties) == SHORTMOL_OK);
  REQUIRE(index == 3 && div == 0.0 && ties == 0);

  double t3 = 0.0;
  REQUIRE(shortmol_theorem3_log_codebook_size(500.0, 6, 0.1, &t3) == SHORTMOL_OK);
  REQUIRE(t3 > 0.0);
  REQUIRE(shortmol_theorem3_log_codebook_size(500.0, 6, 0.6, &t3) == SHORTMOL_ERR_CONFIG);

  shortmol_channel* ch = nullptr;
  REQUIRE(shortmol_channel_identity(2, &ch) == SHORTMOL_OK);
  double psi = 0.0;
  REQUIRE(shortmol_psi_lower_bound(1000.0, 1.0, ch, &psi) == SHORTMOL_OK);
  REQUIRE(psi > 0.0);
  shortmol_channel_free(ch);
  shortmol_codebook_free(cb);
  shortmol_codebook_free(loaded);
}

void test_pipeline() {
  shortmol_channel* ch = nullptr;
  shortmol_code* code = nullptr;
  REQUIRE(shortmol_channel_erasure(2, 0.4, &ch) == SHORTMOL_OK);
  REQUIRE(shortmol_code_sample(2, 2, 6, 5, 1, &code) == SHORTMOL_OK);

  shortmol_experiment_params params{};
  params.M = 300;
  params.xi = 0.5;
  params.codebook_size = 16;
  params.trials = 200;
  params.seed = 99;

  shortmol_experiment_report rep1{}, rep8{};
  REQUIRE(shortmol_run_experiment(ch, code, &params, 1, &rep1) == SHORTMOL_OK);
  REQUIRE(shortmol_run_experiment(ch, code, &params, 8, &rep8) == SHORTMOL_OK);
  REQUIRE(rep1.errors == rep8.errors);
  REQUIRE(rep1.err_rate == rep8.err_rate);
  REQUIRE(rep1.undetected_inner_errors == 0);
  REQUIRE(rep1.N == 150);
  REQUIRE(rep1.T == 4);

  double emp = -1.0, bound = -1.0;
  REQUIRE(shortmol_chernoff_s_check(ch, code, 100, 500, 0.5, 4, &emp, &bound) ==
          SHORTMOL_OK);
  REQUIRE(emp <= bound + 0.05);
  double mean = -1.0, analytic = -1.0;
  REQUIRE(shortmol_chi2_mean_check(5, 50, 2000, 8, &mean, &analytic) == SHORTMOL_OK);
  REQUIRE(std::fabs(analytic - 0.08) <= 1e-15);
  REQUIRE(std::fabs(mean - analytic) <= 0.01);

  shortmol_code_free(code);
  shortmol_channel_free(ch);
}

void test_commands() {
  const std::string cfg_path = temp_path("sweep.json");
  write_text(cfg_path,
             R"({"channel":{"builtin":"erasure","q":2,"p":0.5},
                 "rate_min":0.0,"rate_max":0.3,"rate_points":5})");
  const std::string out_a = temp_path("a.csv");
  const std::string out_b = temp_path("b.csv");

  shortmol_cmd_options opts{};
  opts.out_path = out_a.c_str();
  opts.no_timestamp = 1;
  REQUIRE(shortmol_cmd_exponent_sweep(cfg_path.c_str(), &opts) == SHORTMOL_OK);
  opts.out_path = out_b.c_str();
  REQUIRE(shortmol_cmd_exponent_sweep(cfg_path.c_str(), &opts) == SHORTMOL_OK);
  REQUIRE(slurp(out_a) == slurp(out_b));
  REQUIRE(slurp(out_a).find("# command: exponent-sweep") != std::string::npos);

  // Config errors come back as status 2 and leave no file behind.
  const std::string bad_path = temp_path("bad.json");
  write_text(bad_path, "{");
  const std::string never = temp_path("never.csv");
  opts.out_path = never.c_str();
  REQUIRE(shortmol_cmd_exponent_sweep(bad_path.c_str(), &opts) == SHORTMOL_ERR_CONFIG);
  REQUIRE(slurp(never).empty());

  std::remove(cfg_path.c_str());
  std::remove(bad_path.c_str());
  std::remove(out_a.c_str());
  std::remove(out_b.c_str());
}

}  // namespace

int main() {
  REQUIRE(std::strcmp(shortmol_version(), "0.1.0") == 0);
  test_channels();
  test_codes();
  test_outer();
  test_pipeline();
  test_commands();
  std::printf("capi: all checks passed\n");
  return 0;
}
