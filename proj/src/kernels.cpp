// Copyright 2026 The Linemark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "linemark/kernels.hpp"

namespace linemark {

#if defined(LINEMARK_HAVE_AVX2)
namespace detail {
const KernelTable& avx2_kernel_table();
}  // namespace detail
#endif

namespace {

std::atomic<const KernelTable*> g_active{nullptr};

bool cpu_has_avx2() {
#if defined(LINEMARK_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("pclmul");
#else
  return false;
#endif
}

const KernelTable* pick_default() {
  const char* env = std::getenv("LINEMARK_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") {
    return &scalar_kernels();
  }
  if (const KernelTable* avx2 = avx2_kernels()) return avx2;
  return &scalar_kernels();
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(LINEMARK_HAVE_AVX2)
  static const bool available = cpu_has_avx2();
  if (available) return &detail::avx2_kernel_table();
#endif
  return nullptr;
}

const KernelTable& active_kernels() {
  const KernelTable* table = g_active.load(std::memory_order_acquire);
  if (table == nullptr) {
    const KernelTable* chosen = pick_default();
    g_active.compare_exchange_strong(table, chosen, std::memory_order_acq_rel);
    table = g_active.load(std::memory_order_acquire);
  }
  return *table;
}

bool set_kernel_backend(KernelBackend backend) {
  const KernelTable* table = nullptr;
  switch (backend) {
    case KernelBackend::kScalar:
      table = &scalar_kernels();
      break;
    case KernelBackend::kAvx2:
      table = avx2_kernels();
      break;
  }
  if (table == nullptr) return false;
  g_active.store(table, std::memory_order_release);
  return true;
}

std::string_view backend_name(KernelBackend backend) {
  return backend == KernelBackend::kAvx2 ? "avx2" : "scalar";
}

}  // namespace linemark
