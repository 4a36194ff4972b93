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

#include "bmcgc/map_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "bmcgc/geometry.hpp"
#include "bmcgc/model.hpp"
#include "bmcgc/rng.hpp"

namespace bmcgc {

void MapConfig::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("map config: lambda must be > 0");
  if (max_iterations < 1)
    throw std::invalid_argument("map config: max_iterations must be >= 1");
  if (!(gradient_tolerance > 0.0))
    throw std::invalid_argument("map config: gradient_tolerance must be > 0");
  if (!(initial_step > 0.0) || !(step_shrink > 0.0) || step_shrink >= 1.0 ||
      !(step_grow >= 1.0) || !(armijo_c > 0.0) || armijo_c >= 1.0)
    throw std::invalid_argument("map config: bad line-search parameters");
  if (restarts < 1) throw std::invalid_argument("map config: restarts must be >= 1");
}

Matrix map_gradient(const PointSet& points, const ObservationSet& obs,
                    double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("map_gradient: lambda must be > 0");
  const auto d = points.d();
  Matrix grad = 2.0 * points.coords;
  for (int i = 0; i < obs.n(); ++i) {
    const auto idx = obs.neighbor_indices(i);
    const auto vals = obs.neighbor_values(i);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const int j = idx[t];
      double sq = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double diff = points.coords(i, k) - points.coords(j, k);
        sq += diff * diff;
      }
      const double r = vals[t] - sq;
      for (Eigen::Index k = 0; k < d; ++k)
        grad(i, k) -= 2.0 * lambda * r * (points.coords(i, k) - points.coords(j, k));
    }
  }
  return grad;
}

namespace {

struct DescentRun {
  PointSet points;
  std::vector<double> objective_trace;
  bool converged = false;
  double final_gradient_norm = 0.0;
  int iterations = 0;
};

DescentRun descend(const ObservationSet& obs, int d, const MapConfig& cfg,
                   std::uint64_t seed) {
  const int n = obs.n();
  Rng rng(seed);
  Matrix coords(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) coords(i, k) = rng.normal();

  DescentRun run;
  run.points = PointSet(std::move(coords));
  double objective = map_objective(run.points, obs, cfg.lambda);
  run.objective_trace.push_back(objective);

  double step = cfg.initial_step;
  constexpr double kMinStep = 1e-18;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const Matrix grad = map_gradient(run.points, obs, cfg.lambda);
    const double grad_norm = grad.norm();
    run.final_gradient_norm = grad_norm;
    run.iterations = it;
    if (grad_norm <= cfg.gradient_tolerance * std::max(1.0, run.points.coords.norm())) {
      run.converged = true;
      return run;
    }

    const double grad_sq = grad_norm * grad_norm;
    bool stepped = false;
    while (step >= kMinStep) {
      PointSet candidate(run.points.coords - step * grad);
      const double cand_obj = map_objective(candidate, obs, cfg.lambda);
      if (cand_obj <= objective - cfg.armijo_c * step * grad_sq) {
        run.points = std::move(candidate);
        objective = cand_obj;
        run.objective_trace.push_back(objective);
        stepped = true;
        break;
      }
      step *= cfg.step_shrink;
    }
    if (!stepped) return run;  // line search stalled at machine precision
    step *= cfg.step_grow;
  }
  run.iterations = cfg.max_iterations;
  return run;
}

}  // namespace

MapResult solve_map(const ObservationSet& obs, int d, const MapConfig& cfg) {
  cfg.validate();
  if (d < 1) throw std::invalid_argument("solve_map: d must be >= 1");
  if (obs.pair_count() == 0)
    throw std::invalid_argument("solve_map: no observed pairs");

  DescentRun best;
  double best_objective = 0.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    DescentRun run = descend(obs, d, cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    const double obj = run.objective_trace.back();
    if (r == 0 || obj < best_objective) {
      best_objective = obj;
      best = std::move(run);
    }
  }

  MapResult result;
  result.edm = edm_from_points(best.points);
  result.points = std::move(best.points);
  result.objective_trace = std::move(best.objective_trace);
  result.converged = best.converged;
  result.final_gradient_norm = best.final_gradient_norm;
  result.iterations = best.iterations;
  return result;
}

}  // namespace bmcgc
