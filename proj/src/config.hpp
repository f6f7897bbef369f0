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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "channel.hpp"
#include "exponents.hpp"
#include "linear_code.hpp"

namespace shortmol {

// Parses JSON text, mapping parse failures to ConfigError with line/column
// diagnostics derived from the byte offset.
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);

// Channel objects are either a builtin selector
//   {"builtin": "erasure"|"typewriter"|"identity"|"qary_symmetric", ...params}
// or an explicit matrix
//   {"q": 2, "outputs": 3, "rows": [["0.9","0.1","0"], ...], "witness": [[...]]}
// with row entries given as decimal strings or numbers.
Channel channel_from_json(const nlohmann::json& j);
Channel load_channel_file(const std::string& path);

// {"q":..., "K":..., "L":..., "generator": [row-major ints]}
LinearCode code_from_json(const nlohmann::json& j);

struct ExponentSweepConfig {
  Channel channel;
  std::vector<double> rates;
  double rho_hi = kDefaultRhoHi;
};

struct InnerErasurePoint {
  int L = 0;
  int K = 0;
};

struct InnerErasureConfig {
  Channel channel;
  std::vector<InnerErasurePoint> points;
  int n_codes = 0;
  std::uint64_t trials_per_code = 0;
  bool exact = false;  // average exact per-code erasure probabilities instead of MC
  bool require_full_rank = false;  // restrict the ensemble to full-rank draws
  std::uint64_t seed = 0;
};

struct EndToEndConfig {
  explicit EndToEndConfig(Channel ch) : channel(std::move(ch)) {}

  Channel channel;
  std::optional<LinearCode> explicit_code;
  int q = 0, K = 0, L = 0;
  std::vector<std::int64_t> M_grid;
  double xi = 1.0;
  int codebook_size = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double sigma = 0.25;
  std::string trial_log_path;
};

Channel parse_channel_info_config(const nlohmann::json& j);
ExponentSweepConfig parse_exponent_sweep_config(const nlohmann::json& j);
InnerErasureConfig parse_inner_erasure_config(const nlohmann::json& j);
EndToEndConfig parse_end_to_end_config(const nlohmann::json& j);

}  // namespace shortmol
