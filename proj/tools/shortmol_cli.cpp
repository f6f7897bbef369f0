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

// Command-line front end; argument parsing only, all work happens behind the
// C API of libshortmol. Exit codes: 0 success, 1 invariant failure, 2 config
// error, 3 capability (budget) error.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shortmol.h"

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool has_seed = false;
  int threads = 1;
  bool no_timestamp = false;
};

void add_common_flags(CLI::App* cmd, Flags& flags, bool needs_config) {
  if (needs_config) {
    cmd->add_option("--config", flags.config, "configuration file (JSON)")->required();
  }
  cmd->add_option("--out", flags.out, "output file (default: stdout)");
  cmd->add_option("--seed", flags.seed, "master seed override")
      ->each([&flags](const std::string&) { flags.has_seed = true; });
  cmd->add_option("--threads", flags.threads, "worker thread count")
      ->check(CLI::Range(1, 1024));
  cmd->add_flag("--no-timestamp", flags.no_timestamp,
                "omit the timestamp line from the output header");
}

shortmol_cmd_options to_options(const Flags& flags) {
  shortmol_cmd_options opts{};
  opts.out_path = flags.out.empty() ? nullptr : flags.out.c_str();
  opts.has_seed = flags.has_seed ? 1 : 0;
  opts.seed = flags.seed;
  opts.threads = flags.threads;
  opts.no_timestamp = flags.no_timestamp ? 1 : 0;
  return opts;
}

int finish(int status) {
  if (status != SHORTMOL_OK) {
    std::cerr << "error: " << shortmol_last_error() << '\n';
  }
  // Unexpected internal errors surface as invariant failures.
  return status == SHORTMOL_ERR_INTERNAL ? 1 : status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"channel-coding analysis and simulation for pooled short-molecule "
               "storage with noisy sequencing"};
  app.set_version_flag("--version", std::string(shortmol_version()));
  app.require_subcommand(1);

  Flags channel_info_flags, exponent_flags, inner_flags, e2e_flags, selfcheck_flags;

  CLI::App* channel_info = app.add_subcommand(
      "channel-info", "symmetry verdict, maximal ZUE rate, and capacity notes");
  add_common_flags(channel_info, channel_info_flags, true);

  CLI::App* exponent = app.add_subcommand(
      "exponent-sweep", "erasure exponent over a rate grid (CSV)");
  add_common_flags(exponent, exponent_flags, true);

  CLI::App* inner = app.add_subcommand(
      "inner-erasure", "ensemble erasure probabilities against the exponential bound (CSV)");
  add_common_flags(inner, inner_flags, true);

  CLI::App* e2e = app.add_subcommand(
      "end-to-end", "full storage/retrieval simulation over a pool-size grid (CSV)");
  add_common_flags(e2e, e2e_flags, true);

  CLI::App* selfcheck = app.add_subcommand(
      "selfcheck", "fast invariant suite; non-zero exit on any failure");
  add_common_flags(selfcheck, selfcheck_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage problems (including unknown subcommands) are config errors.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (channel_info->parsed()) {
    const auto opts = to_options(channel_info_flags);
    return finish(shortmol_cmd_channel_info(channel_info_flags.config.c_str(), &opts));
  }
  if (exponent->parsed()) {
    const auto opts = to_options(exponent_flags);
    return finish(shortmol_cmd_exponent_sweep(exponent_flags.config.c_str(), &opts));
  }
  if (inner->parsed()) {
    const auto opts = to_options(inner_flags);
    return finish(shortmol_cmd_inner_erasure(inner_flags.config.c_str(), &opts));
  }
  if (e2e->parsed()) {
    const auto opts = to_options(e2e_flags);
    return finish(shortmol_cmd_end_to_end(e2e_flags.config.c_str(), &opts));
  }
  if (selfcheck->parsed()) {
    const auto opts = to_options(selfcheck_flags);
    return finish(shortmol_cmd_selfcheck(&opts));
  }
  return 2;
}
