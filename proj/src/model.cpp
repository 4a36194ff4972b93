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

#include "bmcgc/model.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bmcgc/kernels.hpp"

namespace bmcgc {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112353;
}

ModelHyperParams ModelHyperParams::defaults_for(int d) {
  if (d < 1) throw std::invalid_argument("hyperparameters need d >= 1");
  ModelHyperParams hp;
  hp.u0 = Vector::Zero(d);
  hp.W0 = Matrix::Identity(d, d);
  hp.nu0 = d + 2;
  return hp;
}

void ModelHyperParams::validate(int d) const {
  if (u0.size() != d) throw std::invalid_argument("hyperparams: u0 has wrong length");
  if (!(beta0 > 0.0)) throw std::invalid_argument("hyperparams: beta0 must be > 0");
  if (!(nu0 > d - 1)) throw std::invalid_argument("hyperparams: nu0 must be > d - 1");
  if (!(a0 > 0.0) || !(b0 > 0.0))
    throw std::invalid_argument("hyperparams: a0 and b0 must be > 0");
  if (!(tau > 0.0)) throw std::invalid_argument("hyperparams: tau must be > 0");
  if (W0.rows() != d || W0.cols() != d || !W0.isApprox(W0.transpose()))
    throw std::invalid_argument("hyperparams: W0 must be symmetric d x d");
  Eigen::LLT<Matrix> llt(W0);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("hyperparams: W0 must be positive-definite");
}

void ChainState::refresh_distance_cache() {
  const auto n = points.n();
  const int d = static_cast<int>(points.d());
  sqdist.resize(n, n);
  Eigen::RowVectorXd q(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    q = points.coords.row(i);
    kernels::active().sqdist_row(points.coords.data(), n, points.coords.rows(),
                                 d, q.data(), sqdist.data() + i * n);
  }
}

void ChainState::refresh_distance_row(int i) {
  const auto n = points.n();
  const int d = static_cast<int>(points.d());
  Eigen::RowVectorXd q = points.coords.row(i);
  double* row = sqdist.data() + static_cast<std::int64_t>(i) * n;
  kernels::active().sqdist_row(points.coords.data(), n, points.coords.rows(), d,
                               q.data(), row);
  for (Eigen::Index j = 0; j < n; ++j) sqdist(j, i) = row[j];
}

double log_likelihood(const PointSet& points, const ObservationSet& obs,
                      double noise_precision) {
  if (!(noise_precision > 0.0))
    throw std::invalid_argument("log_likelihood: noise precision must be > 0");
  const auto& ops = kernels::active();
  const int d = static_cast<int>(points.d());
  double residual_sumsq = 0.0;
  for (int i = 0; i < obs.n(); ++i) {
    const auto idx = obs.upper_neighbor_indices(i);
    if (idx.empty()) continue;
    const auto vals = obs.upper_neighbor_values(i);
    Eigen::RowVectorXd q = points.coords.row(i);
    residual_sumsq += ops.residual_sumsq_fresh(
        points.coords.data(), points.coords.rows(), d, q.data(), idx.data(),
        vals.data(), static_cast<std::int64_t>(idx.size()));
  }
  const double pair_count = static_cast<double>(obs.pair_count());
  return 0.5 * pair_count * (std::log(noise_precision) - kLog2Pi) -
         0.5 * noise_precision * residual_sumsq;
}

double log_point_prior(const PointSet& points, const Vector& mean,
                       const Matrix& precision) {
  const auto n = points.n();
  const auto d = points.d();
  if (mean.size() != d || precision.rows() != d || precision.cols() != d)
    throw std::invalid_argument("log_point_prior: dimension mismatch");
  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("log_point_prior: precision is not positive-definite");
  double log_det = 0.0;
  for (Eigen::Index k = 0; k < d; ++k)
    log_det += 2.0 * std::log(llt.matrixL()(k, k));

  double quad = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector dev = points.coords.row(i).transpose() - mean;
    quad += dev.dot(precision * dev);
  }
  return 0.5 * static_cast<double>(n) * (log_det - static_cast<double>(d) * kLog2Pi) -
         0.5 * quad;
}

double log_conditional_point(int i, const Vector& candidate,
                             const ChainState& state, const ObservationSet& obs) {
  const Vector dev = candidate - state.mean;
  const double prior_term = -0.5 * dev.dot(state.precision * dev);

  const auto idx = obs.neighbor_indices(i);
  if (idx.empty()) return prior_term;
  const auto vals = obs.neighbor_values(i);
  const double residual_sumsq = kernels::active().residual_sumsq_fresh(
      state.points.coords.data(), state.points.coords.rows(),
      static_cast<int>(state.points.d()), candidate.data(), idx.data(),
      vals.data(), static_cast<std::int64_t>(idx.size()));
  return prior_term - 0.5 * state.noise_precision * residual_sumsq;
}

double map_objective(const PointSet& points, const ObservationSet& obs,
                     double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("map_objective: lambda must be > 0");
  const auto& ops = kernels::active();
  const int d = static_cast<int>(points.d());
  double residual_sumsq = 0.0;
  for (int i = 0; i < obs.n(); ++i) {
    const auto idx = obs.upper_neighbor_indices(i);
    if (idx.empty()) continue;
    const auto vals = obs.upper_neighbor_values(i);
    Eigen::RowVectorXd q = points.coords.row(i);
    residual_sumsq += ops.residual_sumsq_fresh(
        points.coords.data(), points.coords.rows(), d, q.data(), idx.data(),
        vals.data(), static_cast<std::int64_t>(idx.size()));
  }
  return 0.5 * lambda * residual_sumsq + points.coords.squaredNorm();
}

}  // namespace bmcgc
