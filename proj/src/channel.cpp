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

#include "channel.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace shortmol {

namespace {

constexpr double kRowSumTolerance = 1e-12;

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

void Channel::finalize() {
  if (q_ < 2) throw std::invalid_argument("channel input alphabet must have q >= 2");
  if (outputs_ < 1) throw std::invalid_argument("channel output alphabet must be non-empty");

  mask_.assign(probs_.size(), 0);
  support_sets_.assign(outputs_, {});
  row_cum_.assign(q_, {});
  row_total_.assign(q_, 0.0);

  for (int x = 0; x < q_; ++x) {
    double sum = 0.0;
    for (int y = 0; y < outputs_; ++y) {
      const double w = prob(x, y);
      if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
        throw std::invalid_argument("channel probabilities must be finite and in [0, 1]");
      }
      sum += w;
      if (w != 0.0) {
        mask_[static_cast<std::size_t>(x) * outputs_ + y] = 1;
        support_sets_[y].push_back(x);
      }
    }
    if (std::fabs(sum - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("channel row " + std::to_string(x) +
                                  " does not sum to 1 within 1e-12");
    }
    double cum = 0.0;
    for (int y = 0; y < outputs_; ++y) {
      const double w = prob(x, y);
      if (w != 0.0) {
        cum += w;
        row_cum_[x].emplace_back(cum, y);
      }
    }
    row_total_[x] = cum;
  }

  if (witness_) {
    if (!verify_symmetry(*this, *witness_)) {
      throw std::invalid_argument("provided symmetry witness fails verification");
    }
  }
}

Channel Channel::from_matrix(std::vector<std::vector<double>> rows,
                             std::optional<SymmetryWitness> witness) {
  if (rows.empty()) throw std::invalid_argument("channel matrix must not be empty");
  Channel ch;
  ch.q_ = static_cast<int>(rows.size());
  ch.outputs_ = static_cast<int>(rows.front().size());
  ch.probs_.reserve(static_cast<std::size_t>(ch.q_) * ch.outputs_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != ch.outputs_) {
      throw std::invalid_argument("channel matrix rows must all have the same length");
    }
    ch.probs_.insert(ch.probs_.end(), row.begin(), row.end());
  }
  ch.witness_ = std::move(witness);
  ch.witness_source_ = ch.witness_ ? WitnessSource::config : WitnessSource::none;
  ch.finalize();
  return ch;
}

Channel make_builtin(ChannelKind kind, int q, double param) {
  Channel ch;
  ch.kind_ = kind;
  ch.kind_param_ = param;
  ch.q_ = q;
  SymmetryWitness w;

  switch (kind) {
    case ChannelKind::identity: {
      ch.outputs_ = q;
      ch.probs_.assign(static_cast<std::size_t>(q) * q, 0.0);
      for (int x = 0; x < q; ++x) ch.probs_[static_cast<std::size_t>(x) * q + x] = 1.0;
      w.table.assign(q, std::vector<int>(q));
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) w.table[x][y] = (y + x) % q;
      break;
    }
    case ChannelKind::erasure: {
      ch.outputs_ = q + 1;
      ch.probs_.assign(static_cast<std::size_t>(q) * (q + 1), 0.0);
      for (int x = 0; x < q; ++x) {
        ch.probs_[static_cast<std::size_t>(x) * (q + 1) + x] = 1.0 - param;
        ch.probs_[static_cast<std::size_t>(x) * (q + 1) + q] = param;
      }
      w.table.assign(q, std::vector<int>(q + 1));
      for (int x = 0; x < q; ++x) {
        for (int y = 0; y < q; ++y) w.table[x][y] = (y + x) % q;
        w.table[x][q] = q;  // erasure symbol is fixed by every shift
      }
      break;
    }
    case ChannelKind::typewriter: {
      ch.outputs_ = 3;
      ch.probs_.assign(9, 0.0);
      for (int x = 0; x < 3; ++x) {
        ch.probs_[static_cast<std::size_t>(x) * 3 + x] = 1.0 - param;
        ch.probs_[static_cast<std::size_t>(x) * 3 + (x + 1) % 3] = param;
      }
      w.table.assign(3, std::vector<int>(3));
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) w.table[x][y] = (y + x) % 3;
      break;
    }
    case ChannelKind::qary_symmetric: {
      ch.outputs_ = q;
      ch.probs_.assign(static_cast<std::size_t>(q) * q, param / (q - 1));
      for (int x = 0; x < q; ++x) ch.probs_[static_cast<std::size_t>(x) * q + x] = 1.0 - param;
      w.table.assign(q, std::vector<int>(q));
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) w.table[x][y] = (y + x) % q;
      break;
    }
    case ChannelKind::custom:
      throw std::invalid_argument("make_builtin requires a builtin kind");
  }

  ch.witness_ = std::move(w);
  ch.witness_source_ = WitnessSource::builtin;
  ch.finalize();
  return ch;
}

Channel Channel::identity(int q) { return make_builtin(ChannelKind::identity, q, 0.0); }

Channel Channel::erasure(int q, double p) {
  check_unit_interval(p, "erasure probability p");
  return make_builtin(ChannelKind::erasure, q, p);
}

Channel Channel::typewriter(double eps) {
  check_unit_interval(eps, "crossover probability eps");
  return make_builtin(ChannelKind::typewriter, 3, eps);
}

Channel Channel::qary_symmetric(int q, double delta) {
  check_unit_interval(delta, "crossover probability delta");
  return make_builtin(ChannelKind::qary_symmetric, q, delta);
}

const std::vector<int>& Channel::support_set(int y) const {
  if (y < 0 || y >= outputs_) throw std::invalid_argument("output symbol out of range");
  return support_sets_[y];
}

int Channel::support_count(int y) const { return static_cast<int>(support_set(y).size()); }

bool Channel::full_support() const {
  for (std::uint8_t m : mask_)
    if (!m) return false;
  return true;
}

double Channel::output_prob_uniform(int y) const {
  if (y < 0 || y >= outputs_) throw std::invalid_argument("output symbol out of range");
  double s = 0.0;
  for (int x = 0; x < q_; ++x) s += prob(x, y);
  return s / q_;
}

int Channel::sample_output(int x, Rng& rng) const {
  if (x < 0 || x >= q_) throw std::invalid_argument("input symbol out of range");
  const auto& cum = row_cum_[x];
  const double u = rng.next_double() * row_total_[x];
  // cum holds positive entries only, so impossible outputs are never drawn.
  for (const auto& [c, y] : cum) {
    if (u < c) return y;
  }
  return cum.back().second;
}

void Channel::sequence(std::span<const int> x_vec, std::span<int> y_out, Rng& rng) const {
  if (y_out.size() != x_vec.size()) {
    throw std::invalid_argument("output buffer length must match input length");
  }
  for (std::size_t i = 0; i < x_vec.size(); ++i) y_out[i] = sample_output(x_vec[i], rng);
}

std::vector<int> Channel::sequence(std::span<const int> x_vec, Rng& rng) const {
  std::vector<int> y(x_vec.size());
  sequence(x_vec, std::span<int>(y), rng);
  return y;
}

bool verify_symmetry(const Channel& channel, const SymmetryWitness& witness) {
  const int q = channel.input_size();
  const int n = channel.output_size();
  if (static_cast<int>(witness.table.size()) != q) {
    throw std::invalid_argument("witness table must have one row per input symbol");
  }
  for (const auto& row : witness.table) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("witness rows must have one entry per output symbol");
    }
  }

  // Property 1: for each x, y -> T(y, x) is a bijection on the outputs.
  std::vector<char> seen(n);
  for (int x = 0; x < q; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int y = 0; y < n; ++y) {
      const int z = witness.table[x][y];
      if (z < 0 || z >= n || seen[z]) return false;
      seen[z] = 1;
    }
  }

  // Property 2: W(y|x1) == W(T(y, x2-x1)|x2), subtraction mod q, exactly.
  for (int x1 = 0; x1 < q; ++x1) {
    for (int x2 = 0; x2 < q; ++x2) {
      const int d = (x2 - x1 + q) % q;
      for (int y = 0; y < n; ++y) {
        if (channel.prob(x1, y) != channel.prob(x2, witness.table[d][y])) return false;
      }
    }
  }
  return true;
}

namespace {

// Perfect matching of outputs to outputs along admissible pairs, by
// backtracking in output order.
bool match_bijection(const std::vector<std::vector<int>>& admissible, int n,
                     std::vector<int>& assignment, std::vector<char>& used, int y) {
  if (y == n) return true;
  for (int z : admissible[y]) {
    if (used[z]) continue;
    used[z] = 1;
    assignment[y] = z;
    if (match_bijection(admissible, n, assignment, used, y + 1)) return true;
    used[z] = 0;
  }
  return false;
}

}  // namespace

std::optional<SymmetryWitness> find_symmetry_witness(const Channel& channel) {
  const int q = channel.input_size();
  const int n = channel.output_size();
  if (n > kWitnessSearchMaxOutputs) {
    throw CapabilityError(
        "witness search supports output alphabets up to " +
        std::to_string(kWitnessSearchMaxOutputs) +
        " symbols; supply a witness in the channel configuration instead");
  }

  SymmetryWitness w;
  w.table.assign(q, std::vector<int>(n));
  // The zero shift is forced to the identity: property 2 with x1 == x2 reads
  // W(y|x) == W(T(y,0)|x) for every x, which the identity satisfies.
  for (int y = 0; y < n; ++y) w.table[0][y] = y;

  for (int d = 1; d < q; ++d) {
    // y may map to z under shift d only if W(y|x) == W(z|x+d) for every x.
    std::vector<std::vector<int>> admissible(n);
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        bool ok = true;
        for (int x = 0; x < q; ++x) {
          if (channel.prob(x, y) != channel.prob((x + d) % q, z)) {
            ok = false;
            break;
          }
        }
        if (ok) admissible[y].push_back(z);
      }
      if (admissible[y].empty()) return std::nullopt;
    }
    std::vector<int> assignment(n, -1);
    std::vector<char> used(n, 0);
    if (!match_bijection(admissible, n, assignment, used, 0)) return std::nullopt;
    w.table[d] = assignment;
  }

  if (!verify_symmetry(channel, w)) return std::nullopt;
  return w;
}

SymmetryWitness require_symmetric(const Channel& channel) {
  if (channel.witness()) return *channel.witness();
  auto found = find_symmetry_witness(channel);
  if (!found) {
    throw std::invalid_argument(
        "channel is not symmetric (no shift function exists); message "
        "independence does not hold, so this analysis is refused");
  }
  return *found;
}

}  // namespace shortmol
