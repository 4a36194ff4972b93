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

#include "bmcgc/synthesis.hpp"
#include "bmcgc/types.hpp"

namespace bmcgc {

/// Fixed hyperparameters of the hierarchical model: Normal-Wishart hyperprior
/// on the latent-point mean and precision, Gamma prior on the noise
/// precision, and the Metropolis proposal width.
struct ModelHyperParams {
  Vector u0;           // prior mean of the point mean, length d
  double beta0 = 2.0;  // relative strength of the mean prior
  Matrix W0;           // Wishart scale, d x d symmetric positive-definite
  double nu0 = 0.0;    // Wishart degrees of freedom, > d - 1
  double a0 = 1e-6;    // Gamma shape for the noise precision
  double b0 = 1e-6;    // Gamma rate for the noise precision
  double tau = 0.05;   // MH proposal standard deviation

  /// The experiment defaults: tau = 0.05, a0 = b0 = 1e-6, beta0 = 2,
  /// nu0 = d + 2, u0 = 0, W0 = I.
  static ModelHyperParams defaults_for(int d);

  /// Throws std::invalid_argument when any constraint is violated.
  void validate(int d) const;
};

/// Current state of one MCMC chain. The squared-distance cache mirrors
/// `points`: entry (i, j) always holds ||P_i - P_j||^2 for the current
/// points, refreshed one row/column at a time as single points move. Callers
/// that modify `points.coords` directly must call refresh_distance_cache()
/// before the next sampler operation.
struct ChainState {
  PointSet points;
  Vector mean;              // u_p
  Matrix precision;         // Delta_p, symmetric positive-definite
  double noise_precision = 1.0;  // alpha = 1 / sigma^2
  long iteration = 0;
  long accept_count = 0;    // MH acceptances in the most recent sweep

  RowMajorMatrix sqdist;    // current pairwise squared distances

  void refresh_distance_cache();
  /// Recomputes row/column i of the cache after point i moved.
  void refresh_distance_row(int i);
  bool cache_ready() const {
    return sqdist.rows() == points.n() && sqdist.cols() == points.n();
  }
};

/// Gaussian log-likelihood of the observed squared distances:
/// sum over observed unordered pairs of
///   1/2 log(alpha / 2 pi) - alpha/2 (D_ij - ||P_i - P_j||^2)^2.
double log_likelihood(const PointSet& points, const ObservationSet& obs,
                      double noise_precision);

/// Fully normalized log-density of the points under the common Gaussian
/// prior N(mean, precision^-1). Throws on non-positive-definite precision.
double log_point_prior(const PointSet& points, const Vector& mean,
                       const Matrix& precision);

/// Log conditional density of point i at `candidate` given everything else,
/// up to an additive constant:
///   -1/2 (c - u_p)^T Delta_p (c - u_p) - alpha/2 sum_{j : (i,j) observed} r_ij^2.
/// Each observed unordered pair involving i is counted once.
double log_conditional_point(int i, const Vector& candidate,
                             const ChainState& state, const ObservationSet& obs);

/// The Gaussian-prior MAP objective:
///   lambda/2 sum over observed pairs of (D_ij - ||P_i - P_j||^2)^2 + ||P||_F^2.
double map_objective(const PointSet& points, const ObservationSet& obs,
                     double lambda);

}  // namespace bmcgc
