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
#include <span>
#include <string>
#include <vector>

#include "rng.hpp"

namespace shortmol {

enum class ChannelKind { custom, identity, erasure, typewriter, qary_symmetric };

// Shift table of a symmetric channel: table[x][y] is the output that y maps to
// under the permutation associated with input x. For each fixed x the map
// y -> table[x][y] must be a bijection on the output alphabet, and
// W(y|x1) == W(table[(x2-x1) mod q][y] | x2) must hold for all (x1, x2, y).
struct SymmetryWitness {
  std::vector<std::vector<int>> table;
};

enum class WitnessSource { none, builtin, config };

// Discrete memoryless channel over the input alphabet Z_q = {0, ..., q-1}.
// Support is structural: an entry belongs to the support iff its configured
// probability is nonzero, and no computed quantity ever decides support by
// epsilon comparison. Immutable after construction; safe to share across
// threads (sampling takes an external Rng).
class Channel {
 public:
  static Channel from_matrix(std::vector<std::vector<double>> rows,
                             std::optional<SymmetryWitness> witness = std::nullopt);
  static Channel identity(int q);
  // Output alphabet is Z_q plus the erasure symbol encoded as index q.
  static Channel erasure(int q, double p);
  // Ternary channel: y = x with prob 1-eps, y = x+1 (mod 3) with prob eps.
  static Channel typewriter(double eps);
  // Full support for delta in (0,1); its maximal ZUE rate is zero.
  static Channel qary_symmetric(int q, double delta);

  int input_size() const { return q_; }
  int output_size() const { return outputs_; }

  double prob(int x, int y) const { return probs_[static_cast<std::size_t>(x) * outputs_ + y]; }
  bool in_support(int x, int y) const {
    return mask_[static_cast<std::size_t>(x) * outputs_ + y] != 0;
  }

  // Inputs x with W(y|x) > 0 as configured.
  const std::vector<int>& support_set(int y) const;
  int support_count(int y) const;
  bool full_support() const;

  // Probability mass of output y under the uniform input distribution.
  double output_prob_uniform(int y) const;

  int sample_output(int x, Rng& rng) const;
  void sequence(std::span<const int> x_vec, std::span<int> y_out, Rng& rng) const;
  std::vector<int> sequence(std::span<const int> x_vec, Rng& rng) const;

  const std::optional<SymmetryWitness>& witness() const { return witness_; }
  WitnessSource witness_source() const { return witness_source_; }

  ChannelKind kind() const { return kind_; }
  double kind_param() const { return kind_param_; }

 private:
  Channel() = default;

  int q_ = 0;
  int outputs_ = 0;
  std::vector<double> probs_;   // row-major, q x outputs
  std::vector<std::uint8_t> mask_;
  std::vector<std::vector<int>> support_sets_;  // per output
  std::vector<std::vector<std::pair<double, int>>> row_cum_;  // positive entries only
  std::vector<double> row_total_;
  std::optional<SymmetryWitness> witness_;
  WitnessSource witness_source_ = WitnessSource::none;
  ChannelKind kind_ = ChannelKind::custom;
  double kind_param_ = 0.0;

  void finalize();
  friend Channel make_builtin(ChannelKind kind, int q, double param);
};

// Exhaustive check of both witness properties; exact arithmetic comparisons.
bool verify_symmetry(const Channel& channel, const SymmetryWitness& witness);

inline constexpr int kWitnessSearchMaxOutputs = 12;

// Backtracking search over per-difference output bijections, with the
// zero-shift fixed to the identity. Throws CapabilityError when the output
// alphabet exceeds the search budget.
std::optional<SymmetryWitness> find_symmetry_witness(const Channel& channel);

// Returns the witness establishing Definition-2 symmetry (bundled or found),
// or throws: invalid_argument if the channel is provably asymmetric,
// CapabilityError if it cannot be decided within the search budget.
SymmetryWitness require_symmetric(const Channel& channel);

}  // namespace shortmol
