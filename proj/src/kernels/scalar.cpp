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

#include "bmcgc/kernels.hpp"

namespace bmcgc::kernels {
namespace {

void sqdist_row_scalar(const double* coords, std::int64_t n,
                       std::int64_t col_stride, int dim, const double* query,
                       double* out) {
  for (std::int64_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double diff = coords[k * col_stride + j] - query[k];
      acc += diff * diff;
    }
    out[j] = acc;
  }
}

double residual_sumsq_fresh_scalar(const double* coords, std::int64_t col_stride,
                                   int dim, const double* query,
                                   const std::int32_t* idx, const double* vals,
                                   std::int64_t m) {
  double acc = 0.0;
  for (std::int64_t t = 0; t < m; ++t) {
    const std::int64_t j = idx[t];
    double dist = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double diff = query[k] - coords[k * col_stride + j];
      dist += diff * diff;
    }
    const double r = vals[t] - dist;
    acc += r * r;
  }
  return acc;
}

double residual_sumsq_cached_scalar(const double* row, const std::int32_t* idx,
                                    const double* vals, std::int64_t m) {
  double acc = 0.0;
  for (std::int64_t t = 0; t < m; ++t) {
    const double r = vals[t] - row[idx[t]];
    acc += r * r;
  }
  return acc;
}

double sum_sq_diff_scalar(const double* a, const double* b, std::int64_t len) {
  double acc = 0.0;
  for (std::int64_t i = 0; i < len; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void accumulate_scalar(double* acc, const double* x, std::int64_t len) {
  for (std::int64_t i = 0; i < len; ++i) acc[i] += x[i];
}

void accumulate_sq_diff_scalar(double* acc, const double* x, const double* mean,
                               std::int64_t len) {
  for (std::int64_t i = 0; i < len; ++i) {
    const double d = x[i] - mean[i];
    acc[i] += d * d;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",
      sqdist_row_scalar,
      residual_sumsq_fresh_scalar,
      residual_sumsq_cached_scalar,
      sum_sq_diff_scalar,
      accumulate_scalar,
      accumulate_sq_diff_scalar,
  };
  return ops;
}

}  // namespace bmcgc::kernels
