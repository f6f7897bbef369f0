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

#include "shortmol.h"

#include <new>
#include <string>

#include "channel.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "exponents.hpp"
#include "linear_code.hpp"
#include "outer_code.hpp"
#include "pipeline.hpp"
#include "rng.hpp"
#include "text_io.hpp"

struct shortmol_channel {
  shortmol::Channel impl;
};

struct shortmol_code {
  shortmol::LinearCode impl;
};

struct shortmol_codebook {
  shortmol::OuterCodebook impl;
};

namespace {

thread_local std::string g_last_error;

int set_error(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Translates the exception taxonomy onto C status codes.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return SHORTMOL_OK;
  } catch (const shortmol::ConfigError& e) {
    return set_error(SHORTMOL_ERR_CONFIG, e.what());
  } catch (const shortmol::CapabilityError& e) {
    return set_error(SHORTMOL_ERR_CAPABILITY, e.what());
  } catch (const shortmol::InvariantError& e) {
    return set_error(SHORTMOL_ERR_INVARIANT, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(SHORTMOL_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SHORTMOL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SHORTMOL_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(SHORTMOL_ERR_INTERNAL, "unknown error");
  }
}

int require(bool cond, const char* message) {
  if (cond) return SHORTMOL_OK;
  return set_error(SHORTMOL_ERR_CONFIG, message);
}

shortmol::CmdOptions convert_options(const char* config_path,
                                     const shortmol_cmd_options* options) {
  shortmol::CmdOptions out;
  if (config_path) out.config_path = config_path;
  if (options) {
    if (options->out_path) out.out_path = options->out_path;
    if (options->has_seed) out.seed = options->seed;
    out.threads = options->threads > 0 ? options->threads : 1;
    out.no_timestamp = options->no_timestamp != 0;
  }
  return out;
}

}  // namespace

extern "C" {

const char* shortmol_version(void) { return shortmol::kToolVersion; }

const char* shortmol_last_error(void) { return g_last_error.c_str(); }

/* ------------------------- channels ------------------------- */

int shortmol_channel_identity(int32_t q, shortmol_channel** out) {
  if (int rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded([&] { *out = new shortmol_channel{shortmol::Channel::identity(q)}; });
}

int shortmol_channel_erasure(int32_t q, double p, shortmol_channel** out) {
  if (int rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded([&] { *out = new shortmol_channel{shortmol::Channel::erasure(q, p)}; });
}

int shortmol_channel_typewriter(double epsilon, shortmol_channel** out) {
  if (int rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded(
      [&] { *out = new shortmol_channel{shortmol::Channel::typewriter(epsilon)}; });
}

int shortmol_channel_qary_symmetric(int32_t q, double delta, shortmol_channel** out) {
  if (int rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded(
      [&] { *out = new shortmol_channel{shortmol::Channel::qary_symmetric(q, delta)}; });
}

int shortmol_channel_from_json(const char* json_text, shortmol_channel** out) {
  if (int rc = require(out != nullptr && json_text != nullptr,
                       "json_text and out must not be null")) {
    return rc;
  }
  return guarded([&] {
    const auto j = shortmol::parse_json_text(json_text, "channel json");
    *out = new shortmol_channel{shortmol::channel_from_json(j)};
  });
}

int shortmol_channel_from_file(const char* path, shortmol_channel** out) {
  if (int rc = require(out != nullptr && path != nullptr, "path and out must not be null")) {
    return rc;
  }
  return guarded([&] { *out = new shortmol_channel{shortmol::load_channel_file(path)}; });
}

void shortmol_channel_free(shortmol_channel* channel) { delete channel; }

int shortmol_channel_input_size(const shortmol_channel* channel, int32_t* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  *out = channel->impl.input_size();
  return SHORTMOL_OK;
}

int shortmol_channel_output_size(const shortmol_channel* channel, int32_t* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  *out = channel->impl.output_size();
  return SHORTMOL_OK;
}

int shortmol_channel_prob(const shortmol_channel* channel, int32_t x, int32_t y,
                          double* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  return guarded([&] {
    if (x < 0 || x >= channel->impl.input_size() || y < 0 ||
        y >= channel->impl.output_size()) {
      throw std::invalid_argument("symbol index out of range");
    }
    *out = channel->impl.prob(x, y);
  });
}

int shortmol_channel_in_support(const shortmol_channel* channel, int32_t x, int32_t y,
                                int32_t* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  return guarded([&] {
    if (x < 0 || x >= channel->impl.input_size() || y < 0 ||
        y >= channel->impl.output_size()) {
      throw std::invalid_argument("symbol index out of range");
    }
    *out = channel->impl.in_support(x, y) ? 1 : 0;
  });
}

int shortmol_channel_support_size(const shortmol_channel* channel, int32_t y,
                                  int32_t* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  return guarded([&] { *out = channel->impl.support_count(y); });
}

int shortmol_channel_is_symmetric(const shortmol_channel* channel, int32_t* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  return guarded([&] {
    if (channel->impl.witness()) {
      *out = 1;
      return;
    }
    *out = shortmol::find_symmetry_witness(channel->impl).has_value() ? 1 : 0;
  });
}

int shortmol_channel_sequence(const shortmol_channel* channel, const int32_t* x,
                              int32_t length, uint64_t seed, int32_t* y_out) {
  if (int rc = require(channel && x && y_out && length > 0,
                       "channel, x, y_out must not be null and length must be positive")) {
    return rc;
  }
  return guarded([&] {
    std::vector<int> xv(x, x + length);
    std::vector<int> yv(length);
    shortmol::Rng rng(seed);
    channel->impl.sequence(xv, yv, rng);
    for (int32_t i = 0; i < length; ++i) y_out[i] = yv[i];
  });
}

/* ------------------------- exponents ------------------------- */

int shortmol_e0_tilde(const shortmol_channel* channel, double rho, double* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  return guarded([&] { *out = shortmol::e0_tilde(channel->impl, rho); });
}

int shortmol_r_max(const shortmol_channel* channel, double* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  return guarded([&] { *out = shortmol::r_max(channel->impl); });
}

int shortmol_erasure_exponent(const shortmol_channel* channel, double rate, double rho_hi,
                              double* exponent, double* rho_star, int32_t* saturated) {
  if (int rc = require(channel && exponent, "channel and exponent must not be null")) {
    return rc;
  }
  return guarded([&] {
    const auto res = shortmol::erasure_exponent(
        channel->impl, rate, rho_hi > 0.0 ? rho_hi : shortmol::kDefaultRhoHi);
    *exponent = res.exponent;
    if (rho_star) *rho_star = res.rho_star;
    if (saturated) *saturated = res.saturated ? 1 : 0;
  });
}

int shortmol_typewriter_c0u_lower_bound(double epsilon, double* out) {
  if (int rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded([&] { *out = shortmol::typewriter_c0u_lower_bound(epsilon); });
}

/* ------------------------- inner codes ------------------------- */

int shortmol_code_create(int32_t q, int32_t K, int32_t L, const int32_t* generator,
                         shortmol_code** out) {
  if (int rc = require(generator && out, "generator and out must not be null")) return rc;
  return guarded([&] {
    if (K < 1 || L < 1) throw std::invalid_argument("K and L must be positive");
    std::vector<int> gen(generator, generator + static_cast<std::size_t>(K) * L);
    *out = new shortmol_code{shortmol::LinearCode(q, K, L, std::move(gen))};
  });
}

int shortmol_code_sample(int32_t q, int32_t K, int32_t L, uint64_t seed,
                         int32_t require_full_rank, shortmol_code** out) {
  if (int rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded([&] {
    shortmol::Rng rng(seed);
    *out = new shortmol_code{
        shortmol::sample_generator(q, K, L, rng, require_full_rank != 0)};
  });
}

void shortmol_code_free(shortmol_code* code) { delete code; }

int shortmol_code_q(const shortmol_code* code, int32_t* out) {
  if (int rc = require(code && out, "code and out must not be null")) return rc;
  *out = code->impl.q();
  return SHORTMOL_OK;
}

int shortmol_code_dimensions(const shortmol_code* code, int32_t* K, int32_t* L) {
  if (int rc = require(code && K && L, "code, K, L must not be null")) return rc;
  *K = code->impl.message_symbols();
  *L = code->impl.block_length();
  return SHORTMOL_OK;
}

int shortmol_code_size(const shortmol_code* code, uint64_t* out) {
  if (int rc = require(code && out, "code and out must not be null")) return rc;
  *out = code->impl.codebook_size();
  return SHORTMOL_OK;
}

int shortmol_code_full_rank(const shortmol_code* code, int32_t* out) {
  if (int rc = require(code && out, "code and out must not be null")) return rc;
  *out = code->impl.full_rank() ? 1 : 0;
  return SHORTMOL_OK;
}

int shortmol_code_encode(const shortmol_code* code, uint64_t message, int32_t* out) {
  if (int rc = require(code && out, "code and out must not be null")) return rc;
  return guarded([&] {
    std::vector<int> word(code->impl.block_length());
    code->impl.encode(message, word);
    for (std::size_t i = 0; i < word.size(); ++i) out[i] = word[i];
  });
}

int shortmol_zue_decode(const shortmol_code* code, const shortmol_channel* channel,
                        const int32_t* y, uint64_t* message, int32_t* erasure) {
  if (int rc = require(code && channel && y && message && erasure,
                       "all arguments must not be null")) {
    return rc;
  }
  return guarded([&] {
    std::vector<int> yv(y, y + code->impl.block_length());
    const auto res = shortmol::zue_decode(code->impl, channel->impl, yv);
    *erasure = res.erasure ? 1 : 0;
    if (!res.erasure) *message = res.message;
  });
}

int shortmol_erasure_prob_exact(const shortmol_code* code,
                                const shortmol_channel* channel, uint64_t transmitted,
                                double* out) {
  if (int rc = require(code && channel && out, "all arguments must not be null")) return rc;
  return guarded(
      [&] { *out = shortmol::erasure_prob_exact(code->impl, channel->impl, transmitted); });
}

int shortmol_erasure_prob_mc(const shortmol_code* code, const shortmol_channel* channel,
                             uint64_t transmitted, uint64_t trials, uint64_t seed,
                             double* estimate, double* half_width_95) {
  if (int rc = require(code && channel && estimate, "all arguments must not be null")) {
    return rc;
  }
  return guarded([&] {
    shortmol::Rng rng(seed);
    const auto res =
        shortmol::erasure_prob_mc(code->impl, channel->impl, transmitted, trials, rng);
    if (res.stats.undetected != 0) {
      throw shortmol::InvariantError("zero-undetected-error guarantee violated");
    }
    *estimate = res.estimate;
    if (half_width_95) *half_width_95 = res.half_width_95;
  });
}

int shortmol_ensemble_erasure_prob(int32_t q, int32_t K, int32_t L,
                                   const shortmol_channel* channel, int32_t n_codes,
                                   uint64_t trials_per_code, uint64_t seed,
                                   int32_t threads, int32_t require_full_rank,
                                   double* mean, double* std_error) {
  if (int rc = require(channel && mean, "channel and mean must not be null")) return rc;
  return guarded([&] {
    const auto res = shortmol::ensemble_erasure_prob(
        q, K, L, channel->impl, n_codes, trials_per_code, seed,
        threads > 0 ? threads : 1, require_full_rank != 0);
    if (res.stats.undetected != 0) {
      throw shortmol::InvariantError("zero-undetected-error guarantee violated");
    }
    *mean = res.mean;
    if (std_error) *std_error = res.std_error;
  });
}

int shortmol_theorem2_bound(const shortmol_channel* channel, int32_t L, double rate,
                            double* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  return guarded([&] { *out = shortmol::theorem2_bound(channel->impl, L, rate); });
}

int shortmol_message_independence(const shortmol_code* code,
                                  const shortmol_channel* channel, double* out) {
  if (int rc = require(code && channel && out, "all arguments must not be null")) return rc;
  return guarded(
      [&] { *out = shortmol::message_independence_check(code->impl, channel->impl); });
}

/* ------------------------- outer codes ------------------------- */

int shortmol_sample_simplex_uniform(int32_t T, uint64_t seed, double* out) {
  if (int rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded([&] {
    shortmol::Rng rng(seed);
    const auto p = shortmol::sample_dirichlet_uniform(T, rng);
    for (int32_t i = 0; i < T; ++i) out[i] = p[i];
  });
}

int shortmol_quantize(const double* p, int32_t T, int64_t M, int64_t* counts_out,
                      double* pmf_out) {
  if (int rc = require(p && counts_out && T > 0, "p and counts_out must not be null")) {
    return rc;
  }
  return guarded([&] {
    const auto w = shortmol::quantize(std::span<const double>(p, T), M);
    for (int32_t i = 0; i < T; ++i) {
      counts_out[i] = w.counts[i];
      if (pmf_out) pmf_out[i] = w.pmf[i];
    }
  });
}

int shortmol_codebook_build(int32_t size, int32_t T, int64_t M, uint64_t seed,
                            shortmol_codebook** out) {
  if (int rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded([&] {
    if (T < 2) throw std::invalid_argument("T must be at least 2");
    *out = new shortmol_codebook{shortmol::build_codebook(size, T, M, seed)};
  });
}

void shortmol_codebook_free(shortmol_codebook* codebook) { delete codebook; }

int shortmol_codebook_save(const shortmol_codebook* codebook, const char* path) {
  if (int rc = require(codebook && path, "codebook and path must not be null")) return rc;
  return guarded([&] { shortmol::save_codebook(codebook->impl, path); });
}

int shortmol_codebook_load(const char* path, shortmol_codebook** out) {
  if (int rc = require(path && out, "path and out must not be null")) return rc;
  return guarded([&] { *out = new shortmol_codebook{shortmol::load_codebook(path)}; });
}

int shortmol_codebook_shape(const shortmol_codebook* codebook, int32_t* size, int32_t* T,
                            int64_t* M, uint64_t* seed) {
  if (int rc = require(codebook != nullptr, "codebook must not be null")) return rc;
  if (size) *size = static_cast<int32_t>(codebook->impl.words.size());
  if (T) *T = codebook->impl.T;
  if (M) *M = codebook->impl.M;
  if (seed) *seed = codebook->impl.seed;
  return SHORTMOL_OK;
}

int shortmol_codebook_counts(const shortmol_codebook* codebook, int32_t index,
                             int64_t* counts_out) {
  if (int rc = require(codebook && counts_out, "codebook and counts_out must not be null")) {
    return rc;
  }
  return guarded([&] {
    if (index < 0 || index >= static_cast<int32_t>(codebook->impl.words.size())) {
      throw std::invalid_argument("codeword index out of range");
    }
    const auto& counts = codebook->impl.words[index].counts;
    for (std::size_t i = 0; i < counts.size(); ++i) counts_out[i] = counts[i];
  });
}

int shortmol_kl_divergence(const double* q, const double* p, int32_t length, double* out) {
  if (int rc = require(q && p && out && length > 0, "q, p, out must not be null")) return rc;
  return guarded([&] {
    *out = shortmol::kl_divergence(std::span<const double>(q, length),
                                   std::span<const double>(p, length));
  });
}

int shortmol_chi_square(const double* q, const double* p, int32_t length, double* out) {
  if (int rc = require(q && p && out && length > 0, "q, p, out must not be null")) return rc;
  return guarded([&] {
    *out = shortmol::chi_square(std::span<const double>(q, length),
                                std::span<const double>(p, length));
  });
}

int shortmol_kl_decode(const shortmol_codebook* codebook, const double* q_hat,
                       int32_t* index, double* divergence, int32_t* tie_count) {
  if (int rc = require(codebook && q_hat && index, "codebook, q_hat, index must not be null")) {
    return rc;
  }
  return guarded([&] {
    const auto res = shortmol::kl_decode(
        codebook->impl, std::span<const double>(q_hat, codebook->impl.T));
    *index = res.index;
    if (divergence) *divergence = res.divergence;
    if (tie_count) *tie_count = res.tie_count;
  });
}

int shortmol_theorem3_log_codebook_size(double M, int32_t T, double sigma, double* out) {
  if (int rc = require(out != nullptr, "out must not be null")) return rc;
  return guarded([&] { *out = shortmol::theorem3_log_codebook_size(M, T, sigma); });
}

int shortmol_psi_lower_bound(double M, double beta, const shortmol_channel* channel,
                             double* out) {
  if (int rc = require(channel && out, "channel and out must not be null")) return rc;
  return guarded([&] { *out = shortmol::psi_lower_bound(M, beta, channel->impl); });
}

/* ------------------------- pipeline ------------------------- */

int shortmol_run_experiment(const shortmol_channel* channel, const shortmol_code* code,
                            const shortmol_experiment_params* params, int32_t threads,
                            shortmol_experiment_report* out) {
  if (int rc = require(channel && code && params && out, "all arguments must not be null")) {
    return rc;
  }
  return guarded([&] {
    shortmol::ExperimentParams p;
    p.M = params->M;
    p.xi = params->xi;
    p.codebook_size = params->codebook_size;
    p.trials = params->trials;
    p.master_seed = params->seed;
    const auto rep = shortmol::run_experiment(channel->impl, code->impl, p,
                                              threads > 0 ? threads : 1);
    if (rep.undetected_inner_errors != 0) {
      throw shortmol::InvariantError("zero-undetected-error guarantee violated");
    }
    *out = {};
    out->N = rep.N;
    out->T = rep.T;
    out->beta_implied = rep.beta_implied;
    out->rate_nats = rep.rate_nats;
    out->trials = rep.trials;
    out->errors = rep.errors;
    out->err_rate = rep.err_rate;
    out->err_ci_half = rep.err_ci_half;
    out->mean_erasure_frac = rep.mean_erasure_frac;
    out->mean_survivors = rep.mean_survivors;
    out->s_zero_frac = rep.s_zero_frac;
    out->tie_count = rep.tie_count;
    out->undetected_inner_errors = rep.undetected_inner_errors;
    out->inner_decodes = rep.inner_decodes;
  });
}

int shortmol_chernoff_s_check(const shortmol_channel* channel, const shortmol_code* code,
                              int64_t N, uint64_t trials, double kappa, uint64_t seed,
                              double* empirical, double* bound) {
  if (int rc = require(channel && code && empirical && bound,
                       "all arguments must not be null")) {
    return rc;
  }
  return guarded([&] {
    const auto res =
        shortmol::chernoff_s_bound_check(channel->impl, code->impl, N, trials, kappa, seed);
    *empirical = res.empirical;
    *bound = res.bound;
  });
}

int shortmol_chi2_mean_check(int32_t T, int64_t N, uint64_t trials, uint64_t seed,
                             double* empirical_mean, double* analytic) {
  if (int rc = require(empirical_mean && analytic, "out parameters must not be null")) {
    return rc;
  }
  return guarded([&] {
    const auto res = shortmol::multinomial_chi2_mean_check(T, N, trials, seed);
    *empirical_mean = res.empirical_mean;
    *analytic = res.analytic;
  });
}

/* ------------------------- commands ------------------------- */

int shortmol_cmd_channel_info(const char* config_path, const shortmol_cmd_options* options) {
  return guarded([&] { shortmol::cmd_channel_info(convert_options(config_path, options)); });
}

int shortmol_cmd_exponent_sweep(const char* config_path,
                                const shortmol_cmd_options* options) {
  return guarded(
      [&] { shortmol::cmd_exponent_sweep(convert_options(config_path, options)); });
}

int shortmol_cmd_inner_erasure(const char* config_path,
                               const shortmol_cmd_options* options) {
  return guarded(
      [&] { shortmol::cmd_inner_erasure(convert_options(config_path, options)); });
}

int shortmol_cmd_end_to_end(const char* config_path, const shortmol_cmd_options* options) {
  return guarded([&] { shortmol::cmd_end_to_end(convert_options(config_path, options)); });
}

int shortmol_cmd_selfcheck(const shortmol_cmd_options* options) {
  return guarded([&] { shortmol::cmd_selfcheck(convert_options(nullptr, options)); });
}

}  // extern "C"
