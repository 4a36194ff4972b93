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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bmcgc/types.hpp"

namespace bmcgc {

/// Requested noise level. Empty snr_db means noiseless.
struct NoiseSpec {
  std::optional<double> snr_db;

  static NoiseSpec noiseless() { return {}; }
  static NoiseSpec with_snr(double db) { return {db}; }
};

struct ObservedPair {
  std::int32_t i = 0, j = 0;  // i < j
  double value = 0.0;
};

/// Sparse symmetric observations: one noisy value per unordered pair. Values
/// can be negative (Gaussian noise on small squared distances is passed
/// through unclamped; the likelihood is an unconstrained Gaussian).
///
/// Besides the canonical pair list, the set carries two CSR adjacency views
/// used by the arithmetic kernels: `neighbors` covers both orientations of
/// each pair, `upper_neighbors` only j > i so each pair is visited once.
class ObservationSet {
 public:
  ObservationSet() = default;
  ObservationSet(int n, std::vector<ObservedPair> pairs,
                 std::optional<double> snr_db, std::uint64_t seed);

  int n() const { return n_; }
  std::size_t pair_count() const { return pairs_.size(); }
  const std::vector<ObservedPair>& pairs() const { return pairs_; }
  std::optional<double> snr_db() const { return snr_db_; }
  std::uint64_t seed() const { return seed_; }

  std::span<const std::int32_t> neighbor_indices(int i) const {
    return {adj_idx_.data() + adj_off_[i],
            static_cast<std::size_t>(adj_off_[i + 1] - adj_off_[i])};
  }
  std::span<const double> neighbor_values(int i) const {
    return {adj_val_.data() + adj_off_[i],
            static_cast<std::size_t>(adj_off_[i + 1] - adj_off_[i])};
  }
  std::span<const std::int32_t> upper_neighbor_indices(int i) const {
    return {up_idx_.data() + up_off_[i],
            static_cast<std::size_t>(up_off_[i + 1] - up_off_[i])};
  }
  std::span<const double> upper_neighbor_values(int i) const {
    return {up_val_.data() + up_off_[i],
            static_cast<std::size_t>(up_off_[i + 1] - up_off_[i])};
  }

  bool is_observed(int i, int j) const;

 private:
  int n_ = 0;
  std::vector<ObservedPair> pairs_;  // sorted by (i, j), i < j
  std::optional<double> snr_db_;
  std::uint64_t seed_ = 0;

  std::vector<std::int32_t> adj_off_, adj_idx_;
  std::vector<double> adj_val_;
  std::vector<std::int32_t> up_off_, up_idx_;
  std::vector<double> up_val_;
};

/// n i.i.d. standard-normal points in R^d. Deterministic in the seed.
PointSet generate_points(int n, int d, std::uint64_t seed);

/// Uniform symmetric mask: each unordered off-diagonal pair observed
/// independently with probability `fraction`. Returned as the sorted list of
/// included (i, j) with i < j.
std::vector<std::pair<std::int32_t, std::int32_t>> generate_mask(
    int n, double fraction, std::uint64_t seed);

/// Adds one zero-mean Gaussian draw per unordered masked pair, mirrored, with
/// the variance solved from the realized masked signal energy so the noise
/// matches the requested SNR in expectation. A noiseless spec copies the true
/// values exactly.
ObservationSet apply_noise(const DistanceMatrix& truth,
                           const std::vector<std::pair<std::int32_t, std::int32_t>>& mask,
                           const NoiseSpec& spec, std::uint64_t seed);

struct Trial {
  PointSet points;
  DistanceMatrix truth;
  ObservationSet observations;
};

/// Points, mask and noise composed from sub-seeds derived from `seed`.
Trial generate_trial(int n, int d, double fraction, const NoiseSpec& spec,
                     std::uint64_t seed);

/// 10 log10(masked signal energy / masked noise energy). Infinity when the
/// observations carry no noise.
double realized_snr_db(const DistanceMatrix& truth, const ObservationSet& obs);

}  // namespace bmcgc
