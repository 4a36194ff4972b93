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

#include <cstdlib>
#include <string_view>

#include "bmcgc/kernels.hpp"

namespace bmcgc::kernels {

#if BMCGC_HAVE_AVX2
const Ops& avx2_ops_impl();
#endif

const Ops* avx2_ops_if_supported() {
#if BMCGC_HAVE_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return &avx2_ops_impl();
#endif
  return nullptr;
}

namespace {

const Ops& select() {
  if (const char* env = std::getenv("BMCGC_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return scalar_ops();
    if (want == "avx2") {
      if (const Ops* ops = avx2_ops_if_supported()) return *ops;
      return scalar_ops();  // requested variant unavailable; fall back
    }
  }
  if (const Ops* ops = avx2_ops_if_supported()) return *ops;
  return scalar_ops();
}

}  // namespace

const Ops& active() {
  static const Ops& chosen = select();
  return chosen;
}

}  // namespace bmcgc::kernels
