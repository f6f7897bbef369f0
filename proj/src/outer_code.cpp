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

#include "outer_code.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "errors.hpp"
#include "exponents.hpp"

namespace shortmol {

std::vector<double> sample_dirichlet_uniform(int T, Rng& rng) {
  if (T < 2) throw std::invalid_argument("simplex dimension T must be at least 2");
  std::vector<double> p(T);
  double sum = 0.0;
  for (auto& v : p) {
    v = rng.next_exponential();
    sum += v;
  }
  for (auto& v : p) v /= sum;
  return p;
}

OuterCodeword quantize(std::span<const double> p, std::int64_t M) {
  const int T = static_cast<int>(p.size());
  if (T < 1) throw std::invalid_argument("PMF must be non-empty");
  if (M <= T) throw std::invalid_argument("pool bound M must exceed the number of types T");

  OuterCodeword w;
  w.counts.resize(T);
  w.pmf.resize(T);
  for (int i = 0; i < T; ++i) {
    const double v = p[i];
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("PMF entries must be finite and non-negative");
    }
    w.counts[i] = static_cast<std::int64_t>(std::floor(static_cast<double>(M) * v));
    w.total += w.counts[i];
  }
  // Floor loses less than one unit per type, so M > T keeps the total positive.
  for (int i = 0; i < T; ++i) {
    w.pmf[i] = static_cast<double>(w.counts[i]) / static_cast<double>(w.total);
  }
  return w;
}

OuterCodebook build_codebook(int size, int T, std::int64_t M, std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("codebook size must be at least 1");
  OuterCodebook cb;
  cb.M = M;
  cb.T = T;
  cb.seed = seed;
  cb.words.reserve(size);
  Rng rng(seed);
  for (int i = 0; i < size; ++i) {
    cb.words.push_back(quantize(sample_dirichlet_uniform(T, rng), M));
  }
  return cb;
}

void save_codebook(const OuterCodebook& codebook, const std::string& path) {
  nlohmann::json j;
  j["M"] = codebook.M;
  j["T"] = codebook.T;
  j["seed"] = codebook.seed;
  auto& words = j["codewords"] = nlohmann::json::array();
  for (const auto& w : codebook.words) words.push_back(w.counts);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

OuterCodebook load_codebook(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open codebook file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("codebook file '" + path + "': " + e.what());
  }
  OuterCodebook cb;
  try {
    cb.M = j.at("M").get<std::int64_t>();
    cb.T = j.at("T").get<int>();
    cb.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& counts_json : j.at("codewords")) {
      OuterCodeword w;
      w.counts = counts_json.get<std::vector<std::int64_t>>();
      if (static_cast<int>(w.counts.size()) != cb.T) {
        throw ConfigError("codebook file '" + path + "': codeword length differs from T");
      }
      for (auto c : w.counts) {
        if (c < 0) throw ConfigError("codebook file '" + path + "': negative count");
        w.total += c;
      }
      if (w.total <= 0) throw ConfigError("codebook file '" + path + "': empty codeword");
      w.pmf.resize(cb.T);
      for (int i = 0; i < cb.T; ++i) {
        w.pmf[i] = static_cast<double>(w.counts[i]) / static_cast<double>(w.total);
      }
      cb.words.push_back(std::move(w));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("codebook file '" + path + "': " + e.what());
  }
  if (cb.words.empty()) throw ConfigError("codebook file '" + path + "': no codewords");
  return cb;
}

namespace {

void check_lengths(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size()) throw std::invalid_argument("PMF lengths must match");
  if (q.empty()) throw std::invalid_argument("PMFs must be non-empty");
}

}  // namespace

double kl_divergence(std::span<const double> q, std::span<const double> p) {
  check_lengths(q, p);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0.0) continue;
    if (p[i] == 0.0) return std::numeric_limits<double>::infinity();
    sum += q[i] * std::log(q[i] / p[i]);
  }
  return sum;
}

double chi_square(std::span<const double> q, std::span<const double> p) {
  check_lengths(q, p);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (p[i] == 0.0) {
      if (q[i] == 0.0) continue;
      return std::numeric_limits<double>::infinity();
    }
    const double d = q[i] - p[i];
    sum += d * d / p[i];
  }
  return sum;
}

KlDecodeResult kl_decode(const OuterCodebook& codebook, std::span<const double> q_hat) {
  if (codebook.words.empty()) throw std::invalid_argument("codebook must be non-empty");
  if (static_cast<int>(q_hat.size()) != codebook.T) {
    throw std::invalid_argument("frequency vector length must equal T");
  }

  KlDecodeResult res;
  res.divergence = std::numeric_limits<double>::infinity();
  res.index = 0;
  bool first = true;
  for (int m = 0; m < static_cast<int>(codebook.words.size()); ++m) {
    const double d = kl_divergence(q_hat, codebook.words[m].pmf);
    if (first || d < res.divergence) {
      res.divergence = d;
      res.index = m;
      res.tie_count = 0;
      first = false;
    } else if (d == res.divergence) {
      ++res.tie_count;
    }
  }
  res.all_infinite = !std::isfinite(res.divergence);
  return res;
}

double theorem3_log_codebook_size(double M, int T, double sigma) {
  if (!(sigma > 0.0 && sigma < 0.5)) {
    throw std::invalid_argument("sigma must lie strictly between 0 and 1/2");
  }
  if (T < 1) throw std::invalid_argument("T must be positive");
  if (!(M > T)) throw std::invalid_argument("M must exceed T");
  return (0.5 - sigma) * static_cast<double>(T) * std::log(M / static_cast<double>(T));
}

double psi_lower_bound(double M, double beta, const Channel& channel) {
  if (!(M >= 2.0)) throw std::invalid_argument("M must be at least 2");
  const double log_q = std::log(static_cast<double>(channel.input_size()));
  if (!(beta > 0.0 && beta < 1.0 / log_q)) {
    throw std::invalid_argument("beta must satisfy 0 < beta < 1/log(q) (short-molecule regime)");
  }
  const double r = r_max(channel);
  return 0.5 * (1.0 - beta * r) * std::pow(M, beta * r) * std::log(M);
}

}  // namespace shortmol
