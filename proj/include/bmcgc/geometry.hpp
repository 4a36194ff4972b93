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

#include <string>
#include <vector>

#include "bmcgc/types.hpp"

namespace bmcgc {

/// Relative tolerances for PSD checks (against the largest eigenvalue
/// magnitude) and singular-value rank cutoffs. Scale-free on purpose.
inline constexpr double kPsdTolerance = 1e-8;
inline constexpr double kRankTolerance = 1e-8;

/// D[i][j] = ||P_i - P_j||^2. Symmetric and hollow by construction.
DistanceMatrix edm_from_points(const PointSet& p);

/// G = P P^T.
GramMatrix gram_from_points(const PointSet& p);

/// D[i][j] = G[i][i] - 2 G[i][j] + G[j][j].
DistanceMatrix edm_from_gram(const GramMatrix& g);

struct CenteredGram {
  GramMatrix gram;
  double min_eigenvalue = 0.0;
  /// False when the most negative eigenvalue exceeds the PSD tolerance,
  /// i.e. the input was not the distance matrix of any point set.
  bool psd_ok = true;
};

/// Double centering: G = -1/2 J D J with J = I - (1/n) 1 1^T. Recovers a
/// translation-centered Gram matrix from a distance matrix.
CenteredGram gram_from_edm_centered(const DistanceMatrix& d);

/// ||estimate - truth||_F / ||truth||_F. Throws std::invalid_argument when
/// truth is all-zero.
double relative_error(const DistanceMatrix& estimate, const DistanceMatrix& truth);

/// Number of singular values above tolerance * largest singular value.
int numerical_rank(const Matrix& m, double tolerance = kRankTolerance);

/// Structural report for an alleged distance matrix, as produced by the
/// `validate` CLI command.
struct EdmValidationReport {
  bool square = false;
  bool symmetric = false;
  Eigen::Index worst_asymmetry_i = -1, worst_asymmetry_j = -1;
  double worst_asymmetry = 0.0;
  bool hollow = false;
  double worst_diagonal = 0.0;
  Eigen::Index negative_entries = 0;
  double most_negative_entry = 0.0;
  int edm_rank = 0;   // expected <= d + 2
  int gram_rank = 0;  // of the double-centered Gram, expected <= d
  double min_gram_eigenvalue = 0.0;
  bool psd_ok = false;
  bool edm_rank_ok = false;
  bool gram_rank_ok = false;

  bool valid() const {
    return square && symmetric && hollow && negative_entries == 0 && psd_ok &&
           edm_rank_ok && gram_rank_ok;
  }
  std::vector<std::string> describe() const;
};

EdmValidationReport validate_edm(const Matrix& candidate, int d);

}  // namespace bmcgc
