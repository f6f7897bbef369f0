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

namespace shortmol {

inline constexpr const char* kToolVersion = "0.1.0";

struct CmdOptions {
  std::string config_path;
  std::string out_path;              // empty: write to stdout
  std::optional<std::uint64_t> seed;  // overrides the config seed
  int threads = 1;
  bool no_timestamp = false;
};

// Each command parses and validates its config, computes the full result in
// memory and only then writes the output, so invalid configs never leave a
// partial file behind. Every output starts with a metadata header (tool
// version, config digest, seed, optional timestamp). Domain/config problems
// throw ConfigError or std::invalid_argument, budget problems CapabilityError;
// the callers map those onto status codes.

void cmd_channel_info(const CmdOptions& options);
void cmd_exponent_sweep(const CmdOptions& options);
void cmd_inner_erasure(const CmdOptions& options);
void cmd_end_to_end(const CmdOptions& options);

// Runs the fast invariant suite; prints one line per check. Throws
// InvariantError when a check fails (CLI exit code 1).
void cmd_selfcheck(const CmdOptions& options);

}  // namespace shortmol
