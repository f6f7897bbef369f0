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

#include "channel.hpp"

namespace shortmol {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelfcheckOptions {
  std::uint64_t seed = 0;
  // Test seam: replaces the symmetric channel used by the message-independence
  // check, so fixtures can exercise the named failure path.
  std::optional<Channel> message_independence_channel;
};

// Fast invariant suite (well under a minute): built-in witness verification,
// exact message independence, D <= chi^2, exponent-function properties,
// the multinomial chi^2 mean identity, and quantization bounds.
std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options = {});

}  // namespace shortmol
