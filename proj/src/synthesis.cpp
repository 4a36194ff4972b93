// Copyright 2026 the bmcgc authors
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

#include "bmcgc/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bmcgc/geometry.hpp"
#include "bmcgc/rng.hpp"

namespace bmcgc {

ObservationSet::ObservationSet(int n, std::vector<ObservedPair> pairs,
                               std::optional<double> snr_db, std::uint64_t seed)
    : n_(n), pairs_(std::move(pairs)), snr_db_(snr_db), seed_(seed) {
  if (n < 1) throw std::invalid_argument("ObservationSet: n must be >= 1");
  std::sort(pairs_.begin(), pairs_.end(), [](const auto& a, const auto& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (const auto& p : pairs_) {
    if (p.i < 0 || p.j >= n || p.i >= p.j)
      throw std::invalid_argument("ObservationSet: pair indices must satisfy 0 <= i < j < n");
  }

  // Degree counts, then CSR fill. Neighbor lists end up sorted by index
  // because the pair list is sorted.
  adj_off_.assign(n + 1, 0);
  up_off_.assign(n + 1, 0);
  for (const auto& p : pairs_) {
    ++adj_off_[p.i + 1];
    ++adj_off_[p.j + 1];
    ++up_off_[p.i + 1];
  }
  for (int i = 0; i < n; ++i) {
    adj_off_[i + 1] += adj_off_[i];
    up_off_[i + 1] += up_off_[i];
  }
  adj_idx_.resize(adj_off_[n]);
  adj_val_.resize(adj_off_[n]);
  up_idx_.resize(up_off_[n]);
  up_val_.resize(up_off_[n]);
  std::vector<std::int32_t> adj_cursor(adj_off_.begin(), adj_off_.end() - 1);
  std::vector<std::int32_t> up_cursor(up_off_.begin(), up_off_.end() - 1);
  for (const auto& p : pairs_) {
    adj_idx_[adj_cursor[p.i]] = p.j;
    adj_val_[adj_cursor[p.i]++] = p.value;
    adj_idx_[adj_cursor[p.j]] = p.i;
    adj_val_[adj_cursor[p.j]++] = p.value;
    up_idx_[up_cursor[p.i]] = p.j;
    up_val_[up_cursor[p.i]++] = p.value;
  }
}

bool ObservationSet::is_observed(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) return false;
  const auto nb = neighbor_indices(i);
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::int32_t>(j));
}

PointSet generate_points(int n, int d, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_points: n must be >= 2");
  if (d < 1) throw std::invalid_argument("generate_points: d must be >= 1");
  Rng rng(seed);
  Matrix coords(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) coords(i, k) = rng.normal();
  return PointSet(std::move(coords));
}

std::vector<std::pair<std::int32_t, std::int32_t>> generate_mask(
    int n, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("generate_mask: fraction must lie in (0, 1]");
  if (n < 2) throw std::invalid_argument("generate_mask: n must be >= 2");
  Rng rng(seed);
  std::vector<std::pair<std::int32_t, std::int32_t>> mask;
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = i + 1; j < n; ++j)
      if (rng.uniform() < fraction) mask.emplace_back(i, j);
  return mask;
}

ObservationSet apply_noise(
    const DistanceMatrix& truth,
    const std::vector<std::pair<std::int32_t, std::int32_t>>& mask,
    const NoiseSpec& spec, std::uint64_t seed) {
  if (mask.empty()) throw std::invalid_argument("apply_noise: empty mask");
  const int n = static_cast<int>(truth.n());

  std::vector<ObservedPair> pairs;
  pairs.reserve(mask.size());
  double sigma = 0.0;
  if (spec.snr_db) {
    // sigma^2 = ||D (.) M||_F^2 / (|M| 10^(SNR/10)), both sides counting the
    // two mirrored copies of each pair.
    double signal_energy = 0.0;
    for (const auto& [i, j] : mask) {
      const double v = truth.entries(i, j);
      signal_energy += 2.0 * v * v;
    }
    const double masked_entries = 2.0 * static_cast<double>(mask.size());
    const double target = std::pow(10.0, *spec.snr_db / 10.0);
    sigma = std::sqrt(signal_energy / (masked_entries * target));
  }

  Rng rng(seed);
  for (const auto& [i, j] : mask) {
    double value = truth.entries(i, j);
    if (sigma > 0.0) value += sigma * rng.normal();
    pairs.push_back({i, j, value});
  }
  return ObservationSet(n, std::move(pairs), spec.snr_db, seed);
}

Trial generate_trial(int n, int d, double fraction, const NoiseSpec& spec,
                     std::uint64_t seed) {
  Trial trial;
  trial.points = generate_points(n, d, derive_seed(seed, 1));
  trial.truth = edm_from_points(trial.points);
  auto mask = generate_mask(n, fraction, derive_seed(seed, 2));
  trial.observations = apply_noise(trial.truth, mask, spec, derive_seed(seed, 3));
  return trial;
}

double realized_snr_db(const DistanceMatrix& truth, const ObservationSet& obs) {
  double signal = 0.0;
  double noise = 0.0;
  for (const auto& p : obs.pairs()) {
    const double t = truth.entries(p.i, p.j);
    const double e = p.value - t;
    signal += t * t;
    noise += e * e;
  }
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / noise);
}

}  // namespace bmcgc
