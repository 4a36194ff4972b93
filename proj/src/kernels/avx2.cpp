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

// AVX2/FMA variants. Compiled with -mavx2 -mfma into the same binary as the
// scalar reference; must only be reached through the runtime dispatch, which
// checks CPU support first.

#include <immintrin.h>

#include "bmcgc/kernels.hpp"

namespace bmcgc::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d sum2 = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(sum2, sum2);
  return _mm_cvtsd_f64(_mm_add_sd(sum2, swapped));
}

void sqdist_row_avx2(const double* coords, std::int64_t n,
                     std::int64_t col_stride, int dim, const double* query,
                     double* out) {
  std::int64_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int k = 0; k < dim; ++k) {
      const __m256d c = _mm256_loadu_pd(coords + k * col_stride + j);
      const __m256d q = _mm256_set1_pd(query[k]);
      const __m256d diff = _mm256_sub_pd(c, q);
      acc = _mm256_fmadd_pd(diff, diff, acc);
    }
    _mm256_storeu_pd(out + j, acc);
  }
  for (; j < n; ++j) {
    double acc = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double diff = coords[k * col_stride + j] - query[k];
      acc += diff * diff;
    }
    out[j] = acc;
  }
}

double residual_sumsq_fresh_avx2(const double* coords, std::int64_t col_stride,
                                 int dim, const double* query,
                                 const std::int32_t* idx, const double* vals,
                                 std::int64_t m) {
  __m256d acc = _mm256_setzero_pd();
  std::int64_t t = 0;
  for (; t + 4 <= m; t += 4) {
    const __m128i vidx =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + t));
    __m256d dist = _mm256_setzero_pd();
    for (int k = 0; k < dim; ++k) {
      const __m256d c = _mm256_i32gather_pd(coords + k * col_stride, vidx, 8);
      const __m256d q = _mm256_set1_pd(query[k]);
      const __m256d diff = _mm256_sub_pd(q, c);
      dist = _mm256_fmadd_pd(diff, diff, dist);
    }
    const __m256d v = _mm256_loadu_pd(vals + t);
    const __m256d r = _mm256_sub_pd(v, dist);
    acc = _mm256_fmadd_pd(r, r, acc);
  }
  double tail = 0.0;
  for (; t < m; ++t) {
    const std::int64_t j = idx[t];
    double dist = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double diff = query[k] - coords[k * col_stride + j];
      dist += diff * diff;
    }
    const double r = vals[t] - dist;
    tail += r * r;
  }
  return hsum(acc) + tail;
}

double residual_sumsq_cached_avx2(const double* row, const std::int32_t* idx,
                                  const double* vals, std::int64_t m) {
  __m256d acc = _mm256_setzero_pd();
  std::int64_t t = 0;
  for (; t + 4 <= m; t += 4) {
    const __m128i vidx =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + t));
    const __m256d cached = _mm256_i32gather_pd(row, vidx, 8);
    const __m256d v = _mm256_loadu_pd(vals + t);
    const __m256d r = _mm256_sub_pd(v, cached);
    acc = _mm256_fmadd_pd(r, r, acc);
  }
  double tail = 0.0;
  for (; t < m; ++t) {
    const double r = vals[t] - row[idx[t]];
    tail += r * r;
  }
  return hsum(acc) + tail;
}

double sum_sq_diff_avx2(const double* a, const double* b, std::int64_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::int64_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double tail = 0.0;
  for (; i < len; ++i) {
    const double d = a[i] - b[i];
    tail += d * d;
  }
  return hsum(acc) + tail;
}

void accumulate_avx2(double* acc, const double* x, std::int64_t len) {
  std::int64_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d s = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(acc + i, s);
  }
  for (; i < len; ++i) acc[i] += x[i];
}

void accumulate_sq_diff_avx2(double* acc, const double* x, const double* mean,
                             std::int64_t len) {
  std::int64_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(mean + i));
    const __m256d s = _mm256_fmadd_pd(d, d, _mm256_loadu_pd(acc + i));
    _mm256_storeu_pd(acc + i, s);
  }
  for (; i < len; ++i) {
    const double d = x[i] - mean[i];
    acc[i] += d * d;
  }
}

}  // namespace

const Ops& avx2_ops_impl() {
  static const Ops ops = {
      "avx2",
      sqdist_row_avx2,
      residual_sumsq_fresh_avx2,
      residual_sumsq_cached_avx2,
      sum_sq_diff_avx2,
      accumulate_avx2,
      accumulate_sq_diff_avx2,
  };
  return ops;
}

}  // namespace bmcgc::kernels
