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

#include "bmcgc/sampler.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bmcgc/kernels.hpp"

namespace bmcgc {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112353;
}

void ChainConfig::validate() const {
  if (total_iterations < 1)
    throw std::invalid_argument("chain config: total_iterations must be >= 1");
  if (burn_in < 0 || burn_in >= total_iterations)
    throw std::invalid_argument("chain config: burn_in must lie in [0, total_iterations)");
  if (thin < 1) throw std::invalid_argument("chain config: thin must be >= 1");
  if (samples_to_average < 1)
    throw std::invalid_argument("chain config: samples_to_average must be >= 1");
  if ((total_iterations - burn_in) / thin < samples_to_average)
    throw std::invalid_argument(
        "chain config: not enough post-burn-in iterations to retain the requested samples");
}

PosteriorHyperParams compute_posterior_hyperparams(const PointSet& points,
                                                   const ModelHyperParams& hp) {
  const auto n = points.n();
  const auto d = points.d();
  const double nn = static_cast<double>(n);

  const Vector p_bar = points.coords.colwise().mean().transpose();
  Matrix scatter = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector dev = points.coords.row(i).transpose() - p_bar;
    scatter.noalias() += dev * dev.transpose();
  }

  PosteriorHyperParams post;
  post.beta_star = hp.beta0 + nn;
  post.u_star = (hp.beta0 * hp.u0 + nn * p_bar) / (hp.beta0 + nn);
  post.nu_star = hp.nu0 + nn;

  Eigen::LLT<Matrix> w0_llt(hp.W0);
  if (w0_llt.info() != Eigen::Success)
    throw std::domain_error("posterior hyperparams: W0 is not positive-definite");
  const Vector gap = p_bar - hp.u0;
  Matrix w_star_inv = w0_llt.solve(Matrix::Identity(d, d));
  w_star_inv += scatter;
  w_star_inv.noalias() += (hp.beta0 * nn / (hp.beta0 + nn)) * (gap * gap.transpose());
  w_star_inv = 0.5 * (w_star_inv + w_star_inv.transpose()).eval();

  Eigen::LLT<Matrix> inv_llt(w_star_inv);
  if (inv_llt.info() != Eigen::Success || !w_star_inv.allFinite())
    throw std::domain_error("posterior hyperparams: accumulated inverse scale is singular");
  post.w_star = inv_llt.solve(Matrix::Identity(d, d));
  post.w_star = 0.5 * (post.w_star + post.w_star.transpose()).eval();
  return post;
}

HyperParamDraw sample_hyperparams(const PosteriorHyperParams& post, Rng& rng) {
  const auto d = post.u_star.size();
  if (!(post.nu_star > static_cast<double>(d) - 1.0))
    throw std::domain_error("sample_hyperparams: nu* must exceed d - 1");
  Eigen::LLT<Matrix> llt(post.w_star);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("sample_hyperparams: W* is not positive-definite");
  const Matrix scale_chol = llt.matrixL();

  // Bartlett: A lower-triangular with chi2(nu* - i) diagonal and standard
  // normal subdiagonal; T = L A is a Cholesky-like factor of the draw.
  Matrix bartlett = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    bartlett(i, i) = std::sqrt(rng.chi_squared(post.nu_star - static_cast<double>(i)));
    for (Eigen::Index j = 0; j < i; ++j) bartlett(i, j) = rng.normal();
  }
  const Matrix factor = scale_chol * bartlett;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(factor(i, i) > 0.0) || !std::isfinite(factor(i, i)))
      throw std::domain_error("sample_hyperparams: Bartlett factor is not positive-definite");
  }

  HyperParamDraw draw;
  draw.precision = factor * factor.transpose();
  draw.precision = 0.5 * (draw.precision + draw.precision.transpose()).eval();

  Vector z(d);
  for (Eigen::Index k = 0; k < d; ++k) z(k) = rng.normal();
  // Cov(u) = (beta* Delta)^-1 with Delta = T T^T, so u = u* + T^-T z / sqrt(beta*).
  const Vector shift =
      factor.transpose().triangularView<Eigen::Upper>().solve(z) /
      std::sqrt(post.beta_star);
  draw.mean = post.u_star + shift;
  return draw;
}

double mh_log_acceptance_ratio(const ChainState& state, const ObservationSet& obs,
                               int i, const Vector& candidate) {
  const Vector current = state.points.coords.row(i).transpose();
  const Vector dev_cand = candidate - state.mean;
  const Vector dev_cur = current - state.mean;
  double delta = -0.5 * (dev_cand.dot(state.precision * dev_cand) -
                         dev_cur.dot(state.precision * dev_cur));

  const auto idx = obs.neighbor_indices(i);
  if (!idx.empty()) {
    const auto vals = obs.neighbor_values(i);
    const auto m = static_cast<std::int64_t>(idx.size());
    const auto& ops = kernels::active();
    const int d = static_cast<int>(state.points.d());
    const double cand_sumsq = ops.residual_sumsq_fresh(
        state.points.coords.data(), state.points.coords.rows(), d,
        candidate.data(), idx.data(), vals.data(), m);
    double cur_sumsq;
    if (state.cache_ready()) {
      cur_sumsq = ops.residual_sumsq_cached(
          state.sqdist.data() + static_cast<std::int64_t>(i) * state.points.n(),
          idx.data(), vals.data(), m);
    } else {
      cur_sumsq = ops.residual_sumsq_fresh(
          state.points.coords.data(), state.points.coords.rows(), d,
          current.data(), idx.data(), vals.data(), m);
    }
    delta -= 0.5 * state.noise_precision * (cand_sumsq - cur_sumsq);
  }
  return delta;
}

void mh_update_points(ChainState& state, const ObservationSet& obs,
                      const ModelHyperParams& hp, Rng& rng, bool random_scan) {
  const auto n = state.points.n();
  const auto d = state.points.d();
  if (!state.cache_ready()) state.refresh_distance_cache();
  state.accept_count = 0;

  std::vector<int> order;
  if (random_scan) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    for (Eigen::Index k = n - 1; k > 0; --k) {
      const auto swap_with = static_cast<Eigen::Index>(
          rng.uniform() * static_cast<double>(k + 1));
      std::swap(order[k], order[std::min(swap_with, k)]);
    }
  }

  Vector candidate(d);
  for (Eigen::Index sweep_pos = 0; sweep_pos < n; ++sweep_pos) {
    const int i = random_scan ? order[sweep_pos] : static_cast<int>(sweep_pos);
    for (Eigen::Index k = 0; k < d; ++k)
      candidate(k) = state.points.coords(i, k) + hp.tau * rng.normal();
    const double log_ratio = mh_log_acceptance_ratio(state, obs, i, candidate);
    const double u = rng.uniform_pos();
    if (std::log(u) <= log_ratio) {
      state.points.coords.row(i) = candidate.transpose();
      state.refresh_distance_row(i);
      ++state.accept_count;
    }
  }
}

double observed_residual_sumsq(const ChainState& state, const ObservationSet& obs) {
  const auto& ops = kernels::active();
  const auto n = state.points.n();
  const int d = static_cast<int>(state.points.d());
  double total = 0.0;
  for (int i = 0; i < obs.n(); ++i) {
    const auto idx = obs.upper_neighbor_indices(i);
    if (idx.empty()) continue;
    const auto vals = obs.upper_neighbor_values(i);
    const auto m = static_cast<std::int64_t>(idx.size());
    if (state.cache_ready()) {
      total += ops.residual_sumsq_cached(
          state.sqdist.data() + static_cast<std::int64_t>(i) * n, idx.data(),
          vals.data(), m);
    } else {
      const Vector q = state.points.coords.row(i).transpose();
      total += ops.residual_sumsq_fresh(state.points.coords.data(),
                                        state.points.coords.rows(), d, q.data(),
                                        idx.data(), vals.data(), m);
    }
  }
  return total;
}

double sample_noise_precision(const ChainState& state, const ObservationSet& obs,
                              const ModelHyperParams& hp, Rng& rng) {
  const double a_star = hp.a0 + 0.5 * static_cast<double>(obs.pair_count());
  const double b_star = hp.b0 + 0.5 * observed_residual_sumsq(state, obs);
  return rng.gamma(a_star, b_star);
}

namespace {

PointSet draw_initial_points(int n, const ModelHyperParams& hp, Rng& rng) {
  const auto d = hp.u0.size();
  // Isotropic spread matched to the scale of W0^-1.
  Eigen::LLT<Matrix> llt(hp.W0);
  const Matrix w0_inv = llt.solve(Matrix::Identity(d, d));
  const double spread = std::sqrt(w0_inv.trace() / static_cast<double>(d));
  Matrix coords(n, d);
  for (int i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < d; ++k)
      coords(i, k) = hp.u0(k) + spread * rng.normal();
  return PointSet(std::move(coords));
}

void check_retained_sample(const RowMajorMatrix& sample) {
  const auto n = sample.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sample(i, i) != 0.0)
      throw std::logic_error("retained sample is not hollow");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (sample(i, j) < 0.0)
        throw std::logic_error("retained sample has a negative entry");
      if (sample(i, j) != sample(j, i))
        throw std::logic_error("retained sample is not symmetric");
    }
  }
}

}  // namespace

PosteriorSummary run_chain(const ObservationSet& obs, const ModelHyperParams& hp,
                           const ChainConfig& cfg, const PointSet* init,
                           const DistanceMatrix* truth,
                           const std::function<void(const IterationRecord&)>& on_iteration) {
  cfg.validate();
  const int n = obs.n();
  const int d = static_cast<int>(hp.u0.size());
  hp.validate(d);
  if (obs.pair_count() == 0)
    throw std::invalid_argument("run_chain: no observed pairs");
  if (init && (init->n() != n || init->d() != d))
    throw std::invalid_argument("run_chain: init has wrong shape");

  double truth_norm = 0.0;
  if (truth) {
    if (truth->n() != n) throw std::invalid_argument("run_chain: truth has wrong shape");
    truth_norm = truth->entries.norm();
    if (truth_norm == 0.0)
      throw std::invalid_argument("run_chain: truth matrix is all-zero");
  }

  Rng rng(cfg.seed);
  ChainState state;
  state.points = init ? *init : draw_initial_points(n, hp, rng);
  state.mean = hp.u0;
  state.precision = Matrix::Identity(d, d);
  const double alpha0 = hp.a0 / hp.b0;
  state.noise_precision =
      (std::isfinite(alpha0) && alpha0 > 1e-12 && alpha0 < 1e12) ? alpha0 : 1.0;
  state.refresh_distance_cache();

  // Truth entries in the cache's row-major order for the error trace.
  RowMajorMatrix truth_rm;
  if (truth) truth_rm = truth->entries;

  ModelHyperParams hp_iter = hp;
  double tau = hp.tau;
  const double a_star = hp.a0 + 0.5 * static_cast<double>(obs.pair_count());
  const double n_points = static_cast<double>(n);

  PosteriorSummary summary;
  summary.retained.reserve(cfg.samples_to_average);
  if (truth) summary.error_trace.reserve(cfg.total_iterations);
  long total_accepts = 0;

  for (int t = 1; t <= cfg.total_iterations; ++t) {
    const PosteriorHyperParams post = compute_posterior_hyperparams(state.points, hp);
    HyperParamDraw draw = sample_hyperparams(post, rng);
    state.mean = std::move(draw.mean);
    state.precision = std::move(draw.precision);

    hp_iter.tau = tau;
    mh_update_points(state, obs, hp_iter, rng, cfg.random_scan);
    state.iteration = t;
    total_accepts += state.accept_count;
    const double sweep_rate = static_cast<double>(state.accept_count) / n_points;

    std::optional<double> rel_error;
    if (truth) {
      const double err_sq = kernels::active().sum_sq_diff(
          state.sqdist.data(), truth_rm.data(), truth_rm.size());
      rel_error = std::sqrt(err_sq) / truth_norm;
      summary.error_trace.push_back(*rel_error);
    }

    if (t > cfg.burn_in && (t - cfg.burn_in) % cfg.thin == 0 &&
        static_cast<int>(summary.retained.size()) < cfg.samples_to_average) {
      check_retained_sample(state.sqdist);
      summary.retained.emplace_back(state.sqdist);
    }

    const double resid = observed_residual_sumsq(state, obs);
    const double b_star = hp.b0 + 0.5 * resid;
    state.noise_precision = rng.gamma(a_star, b_star);

    if (on_iteration) {
      IterationRecord rec;
      rec.iteration = t;
      rec.noise_precision = state.noise_precision;
      rec.log_likelihood =
          0.5 * static_cast<double>(obs.pair_count()) *
              (std::log(state.noise_precision) - kLog2Pi) -
          0.5 * state.noise_precision * resid;
      rec.acceptance_rate = sweep_rate;
      rec.relative_error = rel_error;
      on_iteration(rec);
    }

    if (cfg.adapt_proposal) {
      // Robbins-Monro on log tau, targeting 0.3 acceptance.
      const double gain = 0.66 / std::pow(static_cast<double>(t), 0.6);
      tau = std::exp(std::log(tau) + gain * (sweep_rate - 0.3));
    }
  }

  if (static_cast<int>(summary.retained.size()) != cfg.samples_to_average)
    throw std::logic_error("run_chain: retained-sample quota not met");

  const auto count = static_cast<double>(summary.retained.size());
  const auto& ops = kernels::active();
  Matrix acc = Matrix::Zero(n, n);
  for (const Matrix& s : summary.retained)
    ops.accumulate(acc.data(), s.data(), acc.size());
  summary.edm_mean = acc / count;

  Matrix var = Matrix::Zero(n, n);
  for (const Matrix& s : summary.retained)
    ops.accumulate_sq_diff(var.data(), s.data(), summary.edm_mean.data(), var.size());
  if (summary.retained.size() > 1)
    var /= (count - 1.0);
  else
    var.setZero();
  summary.edm_std = var.cwiseSqrt();

  summary.acceptance_rate = static_cast<double>(total_accepts) /
                            (n_points * static_cast<double>(cfg.total_iterations));
  return summary;
}

}  // namespace bmcgc
