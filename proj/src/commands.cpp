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

#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "exponents.hpp"
#include "linear_code.hpp"
#include "outer_code.hpp"
#include "pipeline.hpp"
#include "selfcheck.hpp"
#include "text_io.hpp"

namespace shortmol {

namespace {

struct LoadedConfig {
  nlohmann::json json;
  std::string digest;
};

LoadedConfig load_config(const std::string& path) {
  if (path.empty()) throw ConfigError("a configuration file is required (--config PATH)");
  const std::string text = read_file(path);
  return {parse_json_text(text, path), fnv1a64_hex(text)};
}

void begin_doc(CsvDoc& doc, const char* command, const std::string& digest,
               std::uint64_t seed, const CmdOptions& options) {
  doc.meta("shortmol", kToolVersion);
  doc.meta("command", command);
  doc.meta("config_digest", digest.empty() ? "none" : "fnv1a64:" + digest);
  doc.meta("seed", std::to_string(seed));
  if (!options.no_timestamp) doc.meta("generated", utc_timestamp());
}

void emit(const CsvDoc& doc, const CmdOptions& options) {
  if (options.out_path.empty()) {
    std::cout << doc.str();
  } else {
    write_file(options.out_path, doc.str());
  }
}

int check_threads(const CmdOptions& options) {
  if (options.threads < 1 || options.threads > 1024) {
    throw ConfigError("--threads must lie between 1 and 1024");
  }
  return options.threads;
}

const char* kind_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::identity: return "identity";
    case ChannelKind::erasure: return "erasure";
    case ChannelKind::typewriter: return "typewriter";
    case ChannelKind::qary_symmetric: return "qary_symmetric";
    case ChannelKind::custom: return "custom";
  }
  return "custom";
}

}  // namespace

void cmd_channel_info(const CmdOptions& options) {
  check_threads(options);
  const LoadedConfig cfg = load_config(options.config_path);
  const Channel channel = parse_channel_info_config(cfg.json);
  const std::uint64_t seed = options.seed.value_or(0);

  // Symmetry verdict: bundled/config witness, else a budget-bounded search.
  std::string symmetric = "unknown";
  std::string witness_origin = "none";
  if (channel.witness()) {
    symmetric = "true";
    witness_origin = channel.witness_source() == WitnessSource::builtin ? "builtin" : "config";
  } else {
    try {
      if (auto w = find_symmetry_witness(channel)) {
        symmetric = "true";
        witness_origin = "search";
      } else {
        symmetric = "false";
      }
    } catch (const CapabilityError&) {
      witness_origin = "search_budget_exceeded";
    }
  }

  const double rmax = r_max(channel);

  CsvDoc doc;
  begin_doc(doc, "channel-info", cfg.digest, seed, options);
  doc.columns({"key", "value"});
  doc.row().cell("kind").cell(kind_name(channel.kind()));
  doc.row().cell("input_size").cell(channel.input_size());
  doc.row().cell("output_size").cell(channel.output_size());
  doc.row().cell("symmetric").cell(symmetric);
  doc.row().cell("witness_source").cell(witness_origin);
  doc.row().cell("r_max_nats").cell(rmax);
  doc.row().cell("r_max_bits").cell(rmax / std::log(2.0));
  if (channel.kind() == ChannelKind::erasure) {
    const double cap = (1.0 - channel.kind_param()) *
                       std::log(static_cast<double>(channel.input_size()));
    doc.row().cell("shannon_capacity_nats").cell(cap);
    doc.row().cell("note").cell("r_max equals the Shannon capacity of the erasure channel");
  }
  if (channel.kind() == ChannelKind::typewriter) {
    const double lb = typewriter_c0u_lower_bound(channel.kind_param());
    doc.row().cell("c0u_lower_bound_nats").cell(lb);
    doc.row().cell("c0u_lower_bound_exceeds_r_max").cell(lb > rmax);
  }
  if (channel.full_support()) {
    doc.row().cell("full_support_warning").cell(
        "every output is reachable from every input; the maximal "
        "zero-undetected-error rate is 0");
  }
  emit(doc, options);
}

void cmd_exponent_sweep(const CmdOptions& options) {
  check_threads(options);
  const LoadedConfig cfg = load_config(options.config_path);
  const ExponentSweepConfig sweep = parse_exponent_sweep_config(cfg.json);
  const std::uint64_t seed = options.seed.value_or(0);

  const ExponentCurve curve = exponent_sweep(sweep.channel, sweep.rates, sweep.rho_hi);

  CsvDoc doc;
  begin_doc(doc, "exponent-sweep", cfg.digest, seed, options);
  doc.columns({"rate_nats", "exponent_nats", "rho_star", "saturated"});
  for (std::size_t i = 0; i < curve.rates.size(); ++i) {
    doc.row()
        .cell(curve.rates[i])
        .cell(curve.exponents[i])
        .cell(curve.rho_stars[i])
        .cell(static_cast<bool>(curve.saturated[i]));
  }
  emit(doc, options);
}

void cmd_inner_erasure(const CmdOptions& options) {
  const int threads = check_threads(options);
  const LoadedConfig cfg = load_config(options.config_path);
  const InnerErasureConfig conf = parse_inner_erasure_config(cfg.json);
  const std::uint64_t seed = options.seed.value_or(conf.seed);
  const int q = conf.channel.input_size();

  CsvDoc doc;
  begin_doc(doc, "inner-erasure", cfg.digest, seed, options);
  doc.columns({"L", "K", "rate_nats", "p_er_mc", "ci_half_width", "theorem2_bound"});

  for (std::size_t i = 0; i < conf.points.size(); ++i) {
    const auto [L, K] = conf.points[i];
    const double rate = K * std::log(static_cast<double>(q)) / L;
    const double bound = theorem2_bound(conf.channel, L, rate);
    const std::uint64_t point_seed = stream_seed(seed, kStreamGridPoint, i);

    double estimate = 0.0, half_width = 0.0;
    if (conf.exact) {
      // Ensemble average of exact per-code erasure probabilities.
      require_symmetric(conf.channel);
      std::vector<double> values(conf.n_codes);
      for (int c = 0; c < conf.n_codes; ++c) {
        Rng rng = substream(point_seed, kStreamCodeSample, c);
        const LinearCode code = sample_generator(q, K, L, rng, conf.require_full_rank);
        values[c] = erasure_prob_exact(code, conf.channel, 0);
      }
      double sum = 0.0;
      for (double v : values) sum += v;
      estimate = sum / conf.n_codes;
      if (conf.n_codes > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - estimate) * (v - estimate);
        half_width = 1.959963984540054 *
                     std::sqrt(ss / (conf.n_codes - 1) / conf.n_codes);
      }
    } else {
      const EnsembleEstimate est =
          ensemble_erasure_prob(q, K, L, conf.channel, conf.n_codes, conf.trials_per_code,
                                point_seed, threads, conf.require_full_rank);
      if (est.stats.undetected != 0) {
        throw InvariantError("zero-undetected-error guarantee violated in the ensemble run");
      }
      estimate = est.mean;
      half_width = 1.959963984540054 * est.std_error;
    }

    doc.row().cell(L).cell(K).cell(rate).cell(estimate).cell(half_width).cell(bound);
  }
  emit(doc, options);
}

void cmd_end_to_end(const CmdOptions& options) {
  const int threads = check_threads(options);
  const LoadedConfig cfg = load_config(options.config_path);
  const EndToEndConfig conf = parse_end_to_end_config(cfg.json);
  const std::uint64_t seed = options.seed.value_or(conf.seed);

  // One inner code shared across the whole M grid.
  LinearCode code = [&] {
    if (conf.explicit_code) {
      if (!conf.explicit_code->full_rank()) {
        throw ConfigError(
            "the supplied inner code has duplicate codewords; the pipeline "
            "needs T distinct molecule types");
      }
      return *conf.explicit_code;
    }
    if (!is_prime(conf.q)) {
      throw ConfigError(
          "sampling a full-rank inner code requires a prime q; supply an "
          "explicit generator for composite alphabets");
    }
    Rng rng = substream(seed, kStreamCodeSample);
    return sample_generator(conf.q, conf.K, conf.L, rng, true);
  }();

  CsvDoc doc;
  begin_doc(doc, "end-to-end", cfg.digest, seed, options);
  doc.columns({"M", "L", "K", "q", "beta_implied", "rate_nats", "xi", "codebook_size",
               "trials", "err_rate", "err_ci", "mean_erasure_frac", "s_zero_frac", "ties",
               "undetected_inner_errors", "psi_lower_bound_nats",
               "theorem3_log_codebook_size_nats"});

  CsvDoc trial_doc;
  const bool log_trials = !conf.trial_log_path.empty();
  if (log_trials) {
    begin_doc(trial_doc, "end-to-end-trials", cfg.digest, seed, options);
    trial_doc.columns(
        {"M", "trial", "transmitted", "survivors", "erased", "decoded", "s_zero", "tie",
         "error"});
  }

  for (std::size_t i = 0; i < conf.M_grid.size(); ++i) {
    ExperimentParams params;
    params.M = conf.M_grid[i];
    params.xi = conf.xi;
    params.codebook_size = conf.codebook_size;
    params.trials = conf.trials;
    params.master_seed = stream_seed(seed, kStreamGridPoint, i);

    std::vector<TrialRecord> records;
    const SimulationReport rep = run_experiment(conf.channel, code, params, threads,
                                                log_trials ? &records : nullptr);
    if (rep.undetected_inner_errors != 0) {
      throw InvariantError("zero-undetected-error guarantee violated in the pipeline");
    }

    double psi = std::numeric_limits<double>::quiet_NaN();
    try {
      psi = psi_lower_bound(static_cast<double>(params.M), rep.beta_implied, conf.channel);
    } catch (const std::invalid_argument&) {
      // Outside the short-molecule regime; reported as nan.
    }
    const double t3 = theorem3_log_codebook_size(static_cast<double>(params.M), rep.T,
                                                 conf.sigma);

    doc.row()
        .cell(static_cast<std::int64_t>(params.M))
        .cell(rep.L)
        .cell(rep.K)
        .cell(rep.q)
        .cell(rep.beta_implied)
        .cell(rep.rate_nats)
        .cell(params.xi)
        .cell(params.codebook_size)
        .cell(rep.trials)
        .cell(rep.err_rate)
        .cell(rep.err_ci_half)
        .cell(rep.mean_erasure_frac)
        .cell(rep.s_zero_frac)
        .cell(rep.tie_count)
        .cell(rep.undetected_inner_errors)
        .cell(psi)
        .cell(t3);

    if (log_trials) {
      for (std::size_t t = 0; t < records.size(); ++t) {
        const TrialRecord& r = records[t];
        trial_doc.row()
            .cell(static_cast<std::int64_t>(params.M))
            .cell(static_cast<std::uint64_t>(t))
            .cell(static_cast<std::int64_t>(r.transmitted))
            .cell(r.survivors)
            .cell(r.erased)
            .cell(static_cast<std::int64_t>(r.decoded))
            .cell(r.pipeline_error)
            .cell(r.tie)
            .cell(r.error);
      }
    }
  }

  emit(doc, options);
  if (log_trials) write_file(conf.trial_log_path, trial_doc.str());
}

void cmd_selfcheck(const CmdOptions& options) {
  check_threads(options);
  SelfcheckOptions sc;
  sc.seed = options.seed.value_or(0);
  const std::vector<CheckResult> results = run_selfcheck(sc);

  CsvDoc doc;
  begin_doc(doc, "selfcheck", "", sc.seed, options);
  doc.columns({"check", "status", "detail"});

  bool all_pass = true;
  std::string first_failure;
  for (const auto& r : results) {
    doc.row().cell(r.name).cell(r.pass ? "pass" : "FAIL").cell(r.detail);
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    if (!r.pass && all_pass) {
      all_pass = false;
      first_failure = r.name;
    }
  }
  if (!options.out_path.empty()) write_file(options.out_path, doc.str());
  if (!all_pass) {
    throw InvariantError("selfcheck failed at '" + first_failure + "'");
  }
  std::cout << "all " << results.size() << " checks passed\n";
}

}  // namespace shortmol
