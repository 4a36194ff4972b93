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

namespace bmcgc::kernels {

// Arithmetic inner loops shared by the geometry, sampler and aggregation
// paths. Point coordinates are laid out column-major: coordinate k of all n
// points is the contiguous array coords + k * col_stride, which is exactly
// Eigen's default storage for an n x d matrix. Each kernel has a scalar
// reference implementation and an AVX2 variant; the dispatch table is chosen
// once at startup from CPU capabilities (override with BMCGC_KERNELS=scalar).
//
// Variants may differ from the reference in the last few ulps (FMA, blocked
// summation); the equivalence tests bound that difference.
struct Ops {
  const char* name;

  // out[j] = sum_k (coords[k][j] - query[k])^2 for j in [0, n).
  void (*sqdist_row)(const double* coords, std::int64_t n, std::int64_t col_stride,
                     int dim, const double* query, double* out);

  // sum_t (vals[t] - ||query - P_idx[t]||^2)^2 with distances recomputed from
  // the coordinate arrays. The MH candidate data term.
  double (*residual_sumsq_fresh)(const double* coords, std::int64_t col_stride,
                                 int dim, const double* query,
                                 const std::int32_t* idx, const double* vals,
                                 std::int64_t m);

  // sum_t (vals[t] - row[idx[t]])^2 with distances read from a cached
  // squared-distance row. The MH current-state and precision-update data term.
  double (*residual_sumsq_cached)(const double* row, const std::int32_t* idx,
                                  const double* vals, std::int64_t m);

  // sum_i (a[i] - b[i])^2.
  double (*sum_sq_diff)(const double* a, const double* b, std::int64_t len);

  // acc[i] += x[i].
  void (*accumulate)(double* acc, const double* x, std::int64_t len);

  // acc[i] += (x[i] - mean[i])^2. Second pass of the posterior std estimate.
  void (*accumulate_sq_diff)(double* acc, const double* x, const double* mean,
                             std::int64_t len);
};

const Ops& scalar_ops();

/// AVX2 table, or nullptr when the build or the CPU does not support it.
const Ops* avx2_ops_if_supported();

/// The table every caller goes through. Selected on first use.
const Ops& active();

}  // namespace bmcgc::kernels
