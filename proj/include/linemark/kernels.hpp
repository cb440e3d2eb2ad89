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

#ifndef LINEMARK_KERNELS_HPP_
#define LINEMARK_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "linemark/detail/field_data.hpp"

namespace linemark {

// Data-parallel field kernels. Every backend computes bit-identical
// results; the scalar backend is the reference the others are tested
// against.
enum class KernelBackend { kScalar, kAvx2 };

struct KernelTable {
  KernelBackend backend;
  const char* name;

  // a * b for one pair.
  std::uint64_t (*mul1)(const detail::FieldData& f, std::uint64_t a,
                        std::uint64_t b);

  // out[i] = a[i] * b[i].
  void (*mul)(const detail::FieldData& f, const std::uint64_t* a,
              const std::uint64_t* b, std::uint64_t* out, std::size_t count);

  // out[i] = (ys[i] ^ y0) / (xs[i] ^ x0). out[i] is unspecified when
  // xs[i] == x0.
  void (*slopes)(const detail::FieldData& f, std::uint64_t x0,
                 std::uint64_t y0, const std::uint64_t* xs,
                 const std::uint64_t* ys, std::uint64_t* out,
                 std::size_t count);

  // Number of i with poly(xs[i]) == ys[i], poly given constant term first.
  // When `hits` is non-null, hits[i] is set to 1 on a match and 0 otherwise.
  std::size_t (*count_on_poly)(const detail::FieldData& f,
                               const std::uint64_t* coeffs,
                               std::size_t num_coeffs,
                               const std::uint64_t* xs,
                               const std::uint64_t* ys, std::size_t count,
                               std::uint8_t* hits);
};

const KernelTable& scalar_kernels();
// Null when the build or the CPU lacks AVX2 + PCLMUL.
const KernelTable* avx2_kernels();

// The backend in use. Chosen on first call: LINEMARK_KERNELS=scalar|avx2
// if set, otherwise the widest backend the CPU supports.
const KernelTable& active_kernels();

// Overrides the active backend. Returns false if it is unavailable.
bool set_kernel_backend(KernelBackend backend);

std::string_view backend_name(KernelBackend backend);

}  // namespace linemark

#endif  // LINEMARK_KERNELS_HPP_
