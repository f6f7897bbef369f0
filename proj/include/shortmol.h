/*
 * Copyright 2026 The shortmol Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C API of libshortmol: channel coding for pooled short-molecule storage with
 * noisy symmetric sequencing. Inner layer: random linear block codes over Z_q
 * decoded with a zero-undetected-error rule (decode the unique feasible
 * codeword or declare an erasure). Outer layer: histogram codewords drawn
 * uniformly from the probability simplex, quantized to molecule counts, and
 * decoded by minimum KL divergence against the survivor frequency vector.
 *
 * All handles are opaque; every function returns a status code and reports
 * results through out-parameters. On non-zero status, shortmol_last_error()
 * returns a thread-local description of the failure.
 */

#ifndef SHORTMOL_H
#define SHORTMOL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SHORTMOL_OK 0
#define SHORTMOL_ERR_INVARIANT 1  /* a stated invariant failed */
#define SHORTMOL_ERR_CONFIG 2     /* bad argument, config, or input file */
#define SHORTMOL_ERR_CAPABILITY 3 /* request exceeds an enumeration/search budget */
#define SHORTMOL_ERR_INTERNAL 4

const char* shortmol_version(void);

/* Message for the most recent failure on the calling thread. */
const char* shortmol_last_error(void);

/* ------------------------------------------------------------------ */
/* Channels                                                            */
/* ------------------------------------------------------------------ */

typedef struct shortmol_channel shortmol_channel;

int shortmol_channel_identity(int32_t q, shortmol_channel** out);
int shortmol_channel_erasure(int32_t q, double p, shortmol_channel** out);
int shortmol_channel_typewriter(double epsilon, shortmol_channel** out);
int shortmol_channel_qary_symmetric(int32_t q, double delta, shortmol_channel** out);

/* JSON form: {"builtin": name, ...} or {"q", "outputs", "rows", "witness"?}. */
int shortmol_channel_from_json(const char* json_text, shortmol_channel** out);
int shortmol_channel_from_file(const char* path, shortmol_channel** out);

void shortmol_channel_free(shortmol_channel* channel);

int shortmol_channel_input_size(const shortmol_channel* channel, int32_t* out);
int shortmol_channel_output_size(const shortmol_channel* channel, int32_t* out);
int shortmol_channel_prob(const shortmol_channel* channel, int32_t x, int32_t y,
                          double* out);
int shortmol_channel_in_support(const shortmol_channel* channel, int32_t x, int32_t y,
                                int32_t* out);
/* Number of inputs that can produce output y. */
int shortmol_channel_support_size(const shortmol_channel* channel, int32_t y,
                                  int32_t* out);

/* Definition of symmetry: a shift table exists with per-input output
 * bijections. Verifies a bundled witness or searches (output alphabets up to
 * 12 symbols); returns SHORTMOL_ERR_CAPABILITY when undecidable. */
int shortmol_channel_is_symmetric(const shortmol_channel* channel, int32_t* out);

/* Sequences x (length L) through the channel into y, using the given seed. */
int shortmol_channel_sequence(const shortmol_channel* channel, const int32_t* x,
                              int32_t length, uint64_t seed, int32_t* y_out);

/* ------------------------------------------------------------------ */
/* Erasure-exponent calculus (rates in nats per channel use)           */
/* ------------------------------------------------------------------ */

int shortmol_e0_tilde(const shortmol_channel* channel, double rho, double* out);
int shortmol_r_max(const shortmol_channel* channel, double* out);
/* rho_hi <= 0 selects the default search cap of 64. */
int shortmol_erasure_exponent(const shortmol_channel* channel, double rate,
                              double rho_hi, double* exponent, double* rho_star,
                              int32_t* saturated);
int shortmol_typewriter_c0u_lower_bound(double epsilon, double* out);

/* ------------------------------------------------------------------ */
/* Inner linear block codes and zero-undetected-error decoding         */
/* ------------------------------------------------------------------ */

typedef struct shortmol_code shortmol_code;

int shortmol_code_create(int32_t q, int32_t K, int32_t L, const int32_t* generator,
                         shortmol_code** out);
/* Generator entries i.i.d. uniform on Z_q; with require_full_rank (prime q
 * only) the draw is repeated until all q^K codewords are distinct. */
int shortmol_code_sample(int32_t q, int32_t K, int32_t L, uint64_t seed,
                         int32_t require_full_rank, shortmol_code** out);
void shortmol_code_free(shortmol_code* code);

int shortmol_code_q(const shortmol_code* code, int32_t* out);
int shortmol_code_dimensions(const shortmol_code* code, int32_t* K, int32_t* L);
int shortmol_code_size(const shortmol_code* code, uint64_t* out);
int shortmol_code_full_rank(const shortmol_code* code, int32_t* out);
int shortmol_code_encode(const shortmol_code* code, uint64_t message, int32_t* out);

/* *erasure = 1 and *message untouched on erasure; otherwise *message is the
 * unique feasible codeword index. */
int shortmol_zue_decode(const shortmol_code* code, const shortmol_channel* channel,
                        const int32_t* y, uint64_t* message, int32_t* erasure);

int shortmol_erasure_prob_exact(const shortmol_code* code,
                                const shortmol_channel* channel, uint64_t transmitted,
                                double* out);
int shortmol_erasure_prob_mc(const shortmol_code* code, const shortmol_channel* channel,
                             uint64_t transmitted, uint64_t trials, uint64_t seed,
                             double* estimate, double* half_width_95);
/* Ensemble-average erasure probability. The default ensemble
 * (require_full_rank = 0) keeps rank-deficient generators, matching the
 * exponential bound's statement; pass 1 (prime q only) to restrict the draws
 * to codes with distinct codewords. */
int shortmol_ensemble_erasure_prob(int32_t q, int32_t K, int32_t L,
                                   const shortmol_channel* channel, int32_t n_codes,
                                   uint64_t trials_per_code, uint64_t seed,
                                   int32_t threads, int32_t require_full_rank,
                                   double* mean, double* std_error);
int shortmol_theorem2_bound(const shortmol_channel* channel, int32_t L, double rate,
                            double* out);
/* Max pairwise difference of exact per-message erasure probabilities. */
int shortmol_message_independence(const shortmol_code* code,
                                  const shortmol_channel* channel, double* out);

/* ------------------------------------------------------------------ */
/* Outer histogram codebooks and minimum-KL decoding                   */
/* ------------------------------------------------------------------ */

typedef struct shortmol_codebook shortmol_codebook;

/* Uniform sample from the (T-1)-simplex written into out[0..T). */
int shortmol_sample_simplex_uniform(int32_t T, uint64_t seed, double* out);
/* counts_out[l] = floor(M * p[l]); pmf_out may be NULL. Requires M > T. */
int shortmol_quantize(const double* p, int32_t T, int64_t M, int64_t* counts_out,
                      double* pmf_out);

int shortmol_codebook_build(int32_t size, int32_t T, int64_t M, uint64_t seed,
                            shortmol_codebook** out);
void shortmol_codebook_free(shortmol_codebook* codebook);
int shortmol_codebook_save(const shortmol_codebook* codebook, const char* path);
int shortmol_codebook_load(const char* path, shortmol_codebook** out);
int shortmol_codebook_shape(const shortmol_codebook* codebook, int32_t* size,
                            int32_t* T, int64_t* M, uint64_t* seed);
int shortmol_codebook_counts(const shortmol_codebook* codebook, int32_t index,
                             int64_t* counts_out);

int shortmol_kl_divergence(const double* q, const double* p, int32_t length,
                           double* out);
int shortmol_chi_square(const double* q, const double* p, int32_t length, double* out);
int shortmol_kl_decode(const shortmol_codebook* codebook, const double* q_hat,
                       int32_t* index, double* divergence, int32_t* tie_count);

int shortmol_theorem3_log_codebook_size(double M, int32_t T, double sigma, double* out);
int shortmol_psi_lower_bound(double M, double beta, const shortmol_channel* channel,
                             double* out);

/* ------------------------------------------------------------------ */
/* End-to-end storage/retrieval simulation                             */
/* ------------------------------------------------------------------ */

typedef struct shortmol_experiment_params {
  int64_t M;
  double xi;             /* coverage depth N/M */
  int32_t codebook_size;
  uint64_t trials;
  uint64_t seed;
} shortmol_experiment_params;

typedef struct shortmol_experiment_report {
  int64_t N;
  int32_t T;
  double beta_implied;   /* L / log(M) */
  double rate_nats;      /* K log(q) / L */
  uint64_t trials;
  uint64_t errors;
  double err_rate;
  double err_ci_half;    /* Wilson 95% half-width */
  double mean_erasure_frac;
  double mean_survivors;
  double s_zero_frac;
  uint64_t tie_count;
  uint64_t undetected_inner_errors; /* always 0 */
  uint64_t inner_decodes;
} shortmol_experiment_report;

/* Deterministic in (params->seed) for every thread count. */
int shortmol_run_experiment(const shortmol_channel* channel, const shortmol_code* code,
                            const shortmol_experiment_params* params, int32_t threads,
                            shortmol_experiment_report* out);

int shortmol_chernoff_s_check(const shortmol_channel* channel, const shortmol_code* code,
                              int64_t N, uint64_t trials, double kappa, uint64_t seed,
                              double* empirical, double* bound);
int shortmol_chi2_mean_check(int32_t T, int64_t N, uint64_t trials, uint64_t seed,
                             double* empirical_mean, double* analytic);

/* ------------------------------------------------------------------ */
/* Command entry points (the CLI is a thin wrapper over these)         */
/* ------------------------------------------------------------------ */

typedef struct shortmol_cmd_options {
  const char* out_path;   /* NULL or "": write to stdout */
  int32_t has_seed;
  uint64_t seed;          /* honored when has_seed != 0 */
  int32_t threads;        /* 0 means 1 */
  int32_t no_timestamp;
} shortmol_cmd_options;

int shortmol_cmd_channel_info(const char* config_path,
                              const shortmol_cmd_options* options);
int shortmol_cmd_exponent_sweep(const char* config_path,
                                const shortmol_cmd_options* options);
int shortmol_cmd_inner_erasure(const char* config_path,
                               const shortmol_cmd_options* options);
int shortmol_cmd_end_to_end(const char* config_path,
                            const shortmol_cmd_options* options);
int shortmol_cmd_selfcheck(const shortmol_cmd_options* options);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SHORTMOL_H */
