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
#include <vector>

#include "bmcgc/synthesis.hpp"
#include "bmcgc/types.hpp"

namespace bmcgc {

/// Configuration of the deterministic MAP baseline: gradient descent with
/// Armijo backtracking on the Gaussian-prior objective, restarted from a few
/// random initializations. lambda plays the role 2 sigma_p^2 / sigma^2.
struct MapConfig {
  double lambda = 100.0;
  int max_iterations = 2000;
  double gradient_tolerance = 1e-6;  // on ||grad||_F / max(1, ||P||_F)
  double initial_step = 1e-3;
  double step_shrink = 0.5;
  double step_grow = 2.0;
  double armijo_c = 1e-4;
  int restarts = 3;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MapResult {
  PointSet points;
  DistanceMatrix edm;
  std::vector<double> objective_trace;  // accepted iterates of the best start
  bool converged = false;
  double final_gradient_norm = 0.0;
  int iterations = 0;
};

/// Gradient of the MAP objective with respect to the points:
///   dF/dP_i = 2 P_i - 2 lambda sum_{j : (i,j) observed} r_ij (P_i - P_j),
/// r_ij = D_ij - ||P_i - P_j||^2.
Matrix map_gradient(const PointSet& points, const ObservationSet& obs,
                    double lambda);

/// Minimizes the objective from `restarts` seeded Gaussian initializations
/// and keeps the lowest final objective. Non-convergence is reported through
/// the result flag, never thrown.
MapResult solve_map(const ObservationSet& obs, int d, const MapConfig& cfg);

}  // namespace bmcgc
