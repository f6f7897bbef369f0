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

#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

#include "errors.hpp"
#include "text_io.hpp"

namespace shortmol {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      fail("unknown key '" + it.key() + "' in " + ctx);
    }
  }
}

double parse_probability_cell(const json& cell, const std::string& ctx) {
  if (cell.is_number()) return cell.get<double>();
  if (cell.is_string()) {
    const std::string s = cell.get<std::string>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
      fail(ctx + ": '" + s + "' is not a decimal number");
    }
    return v;
  }
  fail(ctx + ": expected a number or a decimal string");
}

std::uint64_t get_u64(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer()) {
    fail(ctx + ": '" + key + "' must be a non-negative integer");
  }
  if (j.at(key).is_number_integer() && j.at(key).get<std::int64_t>() < 0) {
    fail(ctx + ": '" + key + "' must be non-negative");
  }
  return j.at(key).get<std::uint64_t>();
}

int get_positive_int(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.at(key).is_number_integer() || j.at(key).get<std::int64_t>() < 1) {
    fail(ctx + ": '" + key + "' must be a positive integer");
  }
  return j.at(key).get<int>();
}

}  // namespace

nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column diagnostic.
    std::size_t line = 1, col = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 <= limit && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(origin + ": parse error at line " + std::to_string(line) + ", column " +
         std::to_string(col) + ": " + e.what());
  }
}

Channel channel_from_json(const json& j) {
  if (!j.is_object()) fail("channel: expected an object");

  if (j.contains("builtin")) {
    check_keys(j, {"builtin", "q", "p", "epsilon", "delta"}, "channel");
    const std::string name = j.at("builtin").get<std::string>();
    try {
      if (name == "identity") {
        return Channel::identity(get_positive_int(j, "q", "channel"));
      }
      if (name == "erasure") {
        return Channel::erasure(get_positive_int(j, "q", "channel"),
                                j.at("p").get<double>());
      }
      if (name == "typewriter") {
        return Channel::typewriter(j.at("epsilon").get<double>());
      }
      if (name == "qary_symmetric") {
        return Channel::qary_symmetric(get_positive_int(j, "q", "channel"),
                                       j.at("delta").get<double>());
      }
    } catch (const json::exception& e) {
      fail(std::string("channel: ") + e.what());
    } catch (const std::invalid_argument& e) {
      fail(std::string("channel: ") + e.what());
    }
    fail("channel: unknown builtin '" + name + "'");
  }

  check_keys(j, {"q", "outputs", "rows", "witness"}, "channel");
  int q = 0, outputs = 0;
  try {
    q = get_positive_int(j, "q", "channel");
    outputs = get_positive_int(j, "outputs", "channel");
  } catch (const json::exception& e) {
    fail(std::string("channel: ") + e.what());
  }

  if (!j.contains("rows") || !j.at("rows").is_array()) fail("channel: 'rows' must be an array");
  const auto& rows_json = j.at("rows");
  if (static_cast<int>(rows_json.size()) != q) {
    fail("channel: expected " + std::to_string(q) + " rows, got " +
         std::to_string(rows_json.size()));
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(q);
  for (int x = 0; x < q; ++x) {
    const auto& row_json = rows_json[x];
    if (!row_json.is_array() || static_cast<int>(row_json.size()) != outputs) {
      fail("channel: row " + std::to_string(x) + " must be an array of length " +
           std::to_string(outputs));
    }
    std::vector<double> row;
    row.reserve(outputs);
    for (int y = 0; y < outputs; ++y) {
      row.push_back(parse_probability_cell(
          row_json[y], "channel row " + std::to_string(x) + " entry " + std::to_string(y)));
    }
    rows.push_back(std::move(row));
  }

  std::optional<SymmetryWitness> witness;
  if (j.contains("witness")) {
    const auto& wj = j.at("witness");
    if (!wj.is_array() || static_cast<int>(wj.size()) != q) {
      fail("channel: 'witness' must have one output-index list per input symbol");
    }
    SymmetryWitness w;
    w.table.reserve(q);
    for (const auto& row : wj) {
      if (!row.is_array()) fail("channel: witness rows must be arrays of output indices");
      try {
        w.table.push_back(row.get<std::vector<int>>());
      } catch (const json::exception& e) {
        fail(std::string("channel witness: ") + e.what());
      }
    }
    witness = std::move(w);
  }

  try {
    return Channel::from_matrix(std::move(rows), std::move(witness));
  } catch (const std::invalid_argument& e) {
    fail(std::string("channel: ") + e.what());
  }
}

Channel load_channel_file(const std::string& path) {
  return channel_from_json(parse_json_text(read_file(path), path));
}

LinearCode code_from_json(const json& j) {
  if (!j.is_object()) fail("code: expected an object");
  check_keys(j, {"q", "K", "L", "generator"}, "code");
  try {
    const int q = get_positive_int(j, "q", "code");
    const int K = get_positive_int(j, "K", "code");
    const int L = get_positive_int(j, "L", "code");
    const auto gen = j.at("generator").get<std::vector<int>>();
    return LinearCode(q, K, L, gen);
  } catch (const json::exception& e) {
    fail(std::string("code: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("code: ") + e.what());
  }
}

namespace {

// Configs may either wrap the channel under a "channel" key or be a bare
// channel object (detected by its distinguishing keys).
const json& channel_node(const json& j) {
  if (j.contains("channel")) return j.at("channel");
  if (j.contains("builtin") || j.contains("rows")) return j;
  fail("config: missing 'channel'");
}

}  // namespace

Channel parse_channel_info_config(const json& j) {
  if (!j.is_object()) fail("config: expected an object");
  if (j.contains("channel")) {
    check_keys(j, {"channel"}, "config");
  }
  return channel_from_json(channel_node(j));
}

ExponentSweepConfig parse_exponent_sweep_config(const json& j) {
  if (!j.is_object()) fail("config: expected an object");
  check_keys(j, {"channel", "rates", "rate_min", "rate_max", "rate_points", "rho_hi"},
             "config");

  ExponentSweepConfig cfg{channel_from_json(channel_node(j)), {}, kDefaultRhoHi};

  if (j.contains("rates")) {
    if (j.contains("rate_min") || j.contains("rate_max") || j.contains("rate_points")) {
      fail("config: give either 'rates' or a (rate_min, rate_max, rate_points) range");
    }
    try {
      cfg.rates = j.at("rates").get<std::vector<double>>();
    } catch (const json::exception& e) {
      fail(std::string("config rates: ") + e.what());
    }
  } else if (j.contains("rate_min") && j.contains("rate_max") && j.contains("rate_points")) {
    const double lo = j.at("rate_min").get<double>();
    const double hi = j.at("rate_max").get<double>();
    const int n = get_positive_int(j, "rate_points", "config");
    if (!(hi >= lo)) fail("config: rate_max must be at least rate_min");
    cfg.rates.reserve(n);
    for (int i = 0; i < n; ++i) {
      cfg.rates.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    }
  } else {
    fail("config: missing rate grid ('rates' or rate_min/rate_max/rate_points)");
  }
  if (cfg.rates.empty()) fail("config: rate grid must not be empty");

  if (j.contains("rho_hi")) {
    cfg.rho_hi = j.at("rho_hi").get<double>();
    if (!(cfg.rho_hi > 0.0)) fail("config: rho_hi must be positive");
  }
  return cfg;
}

InnerErasureConfig parse_inner_erasure_config(const json& j) {
  if (!j.is_object()) fail("config: expected an object");
  check_keys(j,
             {"channel", "points", "n_codes", "trials_per_code", "mode",
              "require_full_rank", "seed"},
             "config");

  InnerErasureConfig cfg{channel_from_json(channel_node(j)), {}, 0, 0, false, false, 0};

  if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty()) {
    fail("config: 'points' must be a non-empty array of {L, K} objects");
  }
  for (const auto& pj : j.at("points")) {
    check_keys(pj, {"L", "K"}, "config points");
    InnerErasurePoint p;
    p.L = get_positive_int(pj, "L", "config points");
    p.K = get_positive_int(pj, "K", "config points");
    if (p.K > p.L) fail("config points: K must not exceed L");
    cfg.points.push_back(p);
  }

  cfg.n_codes = get_positive_int(j, "n_codes", "config");
  cfg.trials_per_code = j.contains("trials_per_code") ? get_u64(j, "trials_per_code", "config") : 0;

  if (j.contains("mode")) {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "exact") {
      cfg.exact = true;
    } else if (mode != "mc") {
      fail("config: 'mode' must be 'mc' or 'exact'");
    }
  }
  if (!cfg.exact && cfg.trials_per_code < 1) {
    fail("config: 'trials_per_code' must be a positive integer in mc mode");
  }
  if (j.contains("require_full_rank")) {
    if (!j.at("require_full_rank").is_boolean()) {
      fail("config: 'require_full_rank' must be a boolean");
    }
    cfg.require_full_rank = j.at("require_full_rank").get<bool>();
    if (cfg.require_full_rank && !is_prime(cfg.channel.input_size())) {
      fail("config: 'require_full_rank' needs a prime alphabet size");
    }
  }
  if (j.contains("seed")) cfg.seed = get_u64(j, "seed", "config");
  return cfg;
}

EndToEndConfig parse_end_to_end_config(const json& j) {
  if (!j.is_object()) fail("config: expected an object");
  check_keys(j,
             {"channel", "inner", "M", "M_grid", "xi", "codebook_size", "trials", "seed",
              "sigma", "beta", "trial_log_path"},
             "config");

  EndToEndConfig cfg(channel_from_json(channel_node(j)));

  if (!j.contains("inner")) fail("config: missing 'inner' code specification");
  // `inner` is an inline object or a path to a code file with the same schema.
  const json inner = j.at("inner").is_string()
                         ? parse_json_text(read_file(j.at("inner").get<std::string>()),
                                           j.at("inner").get<std::string>())
                         : j.at("inner");
  if (inner.contains("generator")) {
    cfg.explicit_code = code_from_json(inner);
    cfg.q = cfg.explicit_code->q();
    cfg.K = cfg.explicit_code->message_symbols();
    cfg.L = cfg.explicit_code->block_length();
  } else {
    check_keys(inner, {"q", "K", "L"}, "config inner");
    cfg.q = get_positive_int(inner, "q", "config inner");
    cfg.K = get_positive_int(inner, "K", "config inner");
    cfg.L = get_positive_int(inner, "L", "config inner");
    if (cfg.K > cfg.L) fail("config inner: K must not exceed L");
  }

  if (j.contains("M") == j.contains("M_grid")) {
    fail("config: give exactly one of 'M' or 'M_grid'");
  }
  try {
    if (j.contains("M")) {
      cfg.M_grid.push_back(j.at("M").get<std::int64_t>());
    } else {
      cfg.M_grid = j.at("M_grid").get<std::vector<std::int64_t>>();
    }
  } catch (const json::exception& e) {
    fail(std::string("config: ") + e.what());
  }
  if (cfg.M_grid.empty()) fail("config: 'M_grid' must not be empty");
  for (auto m : cfg.M_grid) {
    if (m < 2) fail("config: pool sizes must be at least 2");
  }

  if (!j.contains("xi")) fail("config: missing coverage depth 'xi'");
  cfg.xi = j.at("xi").get<double>();
  if (!(cfg.xi > 0.0)) fail("config: 'xi' must be positive");

  cfg.codebook_size = get_positive_int(j, "codebook_size", "config");
  cfg.trials = get_u64(j, "trials", "config");
  if (cfg.trials < 1) fail("config: 'trials' must be a positive integer");
  if (j.contains("seed")) cfg.seed = get_u64(j, "seed", "config");

  if (j.contains("sigma")) {
    cfg.sigma = j.at("sigma").get<double>();
    if (!(cfg.sigma > 0.0 && cfg.sigma < 0.5)) {
      fail("config: 'sigma' must lie strictly between 0 and 1/2");
    }
  }

  // The molecule-length parameter is implied: beta = L / log(M). An explicit
  // value is accepted only if it matches the implied one for every grid point.
  if (j.contains("beta")) {
    const double beta = j.at("beta").get<double>();
    for (auto m : cfg.M_grid) {
      const double implied = cfg.L / std::log(static_cast<double>(m));
      if (std::fabs(beta - implied) > 1e-9) {
        fail("config: 'beta' (" + format_double(beta) + ") disagrees with L/log(M) = " +
             format_double(implied) + " at M = " + std::to_string(m) +
             "; omit 'beta' to use the implied value");
      }
    }
  }

  if (j.contains("trial_log_path")) {
    cfg.trial_log_path = j.at("trial_log_path").get<std::string>();
  }
  return cfg;
}

}  // namespace shortmol
