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

#include <functional>
#include <optional>
#include <vector>

#include "bmcgc/model.hpp"
#include "bmcgc/rng.hpp"

namespace bmcgc {

/// Parameters of the Normal-Wishart conditional posterior over the
/// latent-point mean and precision, given the current points.
struct PosteriorHyperParams {
  double beta_star = 0.0;
  Vector u_star;
  double nu_star = 0.0;
  Matrix w_star;  // scale parameterization: E[Delta_p] = nu_star * w_star
};

/// Chain schedule. Defaults reproduce the experiment protocol: 1500
/// iterations, burn-in 1200, thinning 10, 30 retained samples.
struct ChainConfig {
  int total_iterations = 1500;
  int burn_in = 1200;
  int thin = 10;
  int samples_to_average = 30;
  std::uint64_t seed = 0;
  bool random_scan = false;      // randomized sweep order, off for reproduction
  bool adapt_proposal = false;   // Robbins-Monro on tau targeting 0.3, off

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  double log_likelihood = 0.0;
  double noise_precision = 0.0;
  double acceptance_rate = 0.0;  // this sweep
  std::optional<double> relative_error;
};

struct PosteriorSummary {
  Matrix edm_mean;                // elementwise average of retained samples
  Matrix edm_std;                 // elementwise sample standard deviation
  std::vector<Matrix> retained;   // the retained per-iteration estimates
  double acceptance_rate = 0.0;   // over all sweeps of the run
  std::vector<double> error_trace;  // per iteration, when truth was supplied
};

/// Empirical statistics of the points folded into the Normal-Wishart prior:
///   beta* = beta0 + n,  u* = (beta0 u0 + n Pbar) / (beta0 + n),
///   nu* = nu0 + n,
///   (W*)^-1 = W0^-1 + S + beta0 n / (beta0 + n) (Pbar - u0)(Pbar - u0)^T.
/// Throws std::domain_error when the accumulated inverse scale is not
/// positive-definite.
PosteriorHyperParams compute_posterior_hyperparams(const PointSet& points,
                                                   const ModelHyperParams& hp);

struct HyperParamDraw {
  Vector mean;       // u_p
  Matrix precision;  // Delta_p
};

/// Delta_p ~ Wishart(W*, nu*) by Bartlett decomposition, then
/// u_p | Delta_p ~ N(u*, (beta* Delta_p)^-1).
HyperParamDraw sample_hyperparams(const PosteriorHyperParams& post, Rng& rng);

/// Log acceptance ratio of moving point i to `candidate`: the difference of
/// log_conditional_point at the candidate and at the current position. Uses
/// the state's distance cache when it is current.
double mh_log_acceptance_ratio(const ChainState& state, const ObservationSet& obs,
                               int i, const Vector& candidate);

/// One Metropolis sweep: visits every point (ascending order unless
/// random_scan), proposes N(P_i, tau^2 I), accepts with probability
/// min(1, exp(log ratio)). Accepted moves take effect immediately within the
/// sweep. Resets and fills state.accept_count.
void mh_update_points(ChainState& state, const ObservationSet& obs,
                      const ModelHyperParams& hp, Rng& rng,
                      bool random_scan = false);

/// Residual sum of squares over observed unordered pairs at the current
/// points.
double observed_residual_sumsq(const ChainState& state, const ObservationSet& obs);

/// Gibbs draw of the noise precision:
///   alpha ~ Gamma(a0 + |observed pairs| / 2, b0 + residual sum of squares / 2).
double sample_noise_precision(const ChainState& state, const ObservationSet& obs,
                              const ModelHyperParams& hp, Rng& rng);

/// Runs the full chain: per iteration a hyperparameter Gibbs update, a
/// Metropolis sweep over the points, the pairwise-distance estimate, and the
/// noise-precision Gibbs update. After burn-in every thin-th estimate is
/// retained until samples_to_average are collected; their elementwise mean
/// and standard deviation form the summary. When `truth` is given the
/// relative reconstruction error is recorded every iteration.
PosteriorSummary run_chain(
    const ObservationSet& obs, const ModelHyperParams& hp, const ChainConfig& cfg,
    const PointSet* init = nullptr, const DistanceMatrix* truth = nullptr,
    const std::function<void(const IterationRecord&)>& on_iteration = {});

}  // namespace bmcgc
