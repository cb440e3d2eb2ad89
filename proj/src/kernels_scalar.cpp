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

// Portable reference kernels.

#include <vector>

#include "linemark/kernels.hpp"

namespace linemark {
namespace {

using detail::FieldData;

inline std::uint64_t table_mul(const FieldData& f, std::uint64_t a,
                               std::uint64_t b) {
  return static_cast<std::uint64_t>(f.exp[f.log[a] + f.log[b]]);
}

std::uint64_t scalar_mul1(const FieldData& f, std::uint64_t a,
                          std::uint64_t b) {
  if (f.has_tables()) return table_mul(f, a, b);
  return detail::mul_shift_reduce(f, a, b);
}

void scalar_mul(const FieldData& f, const std::uint64_t* a,
                const std::uint64_t* b, std::uint64_t* out,
                std::size_t count) {
  if (f.has_tables()) {
    for (std::size_t i = 0; i < count; ++i) out[i] = table_mul(f, a[i], b[i]);
    return;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = detail::mul_shift_reduce(f, a[i], b[i]);
  }
}

std::uint64_t soft_inv(const FieldData& f, std::uint64_t a) {
  // a^(2^n - 2) by square-and-multiply.
  std::uint64_t result = 1;
  std::uint64_t base = a;
  for (unsigned i = 1; i < f.bits; ++i) {
    base = detail::mul_shift_reduce(f, base, base);
    result = detail::mul_shift_reduce(f, result, base);
  }
  return result;
}

void scalar_slopes(const FieldData& f, std::uint64_t x0, std::uint64_t y0,
                   const std::uint64_t* xs, const std::uint64_t* ys,
                   std::uint64_t* out, std::size_t count) {
  if (f.has_tables()) {
    const std::int32_t order = static_cast<std::int32_t>(f.order);
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t dx = xs[i] ^ x0;
      if (dx == 0) {
        out[i] = 0;
        continue;
      }
      const std::uint64_t dy = ys[i] ^ y0;
      out[i] = static_cast<std::uint64_t>(
          f.exp[f.log[dy] + order - f.log[dx]]);
    }
    return;
  }
  // Batch inversion: out[i] holds the prefix product of nonzero dx[0..i).
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = acc;
    const std::uint64_t dx = xs[i] ^ x0;
    if (dx != 0) acc = detail::mul_shift_reduce(f, acc, dx);
  }
  std::uint64_t inv_acc = soft_inv(f, acc);
  for (std::size_t i = count; i-- > 0;) {
    const std::uint64_t dx = xs[i] ^ x0;
    if (dx == 0) {
      out[i] = 0;
      continue;
    }
    const std::uint64_t inv_dx = detail::mul_shift_reduce(f, inv_acc, out[i]);
    inv_acc = detail::mul_shift_reduce(f, inv_acc, dx);
    out[i] = detail::mul_shift_reduce(f, ys[i] ^ y0, inv_dx);
  }
}

std::size_t scalar_count_on_poly(const FieldData& f,
                                 const std::uint64_t* coeffs,
                                 std::size_t num_coeffs,
                                 const std::uint64_t* xs,
                                 const std::uint64_t* ys, std::size_t count,
                                 std::uint8_t* hits) {
  std::size_t matched = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t k = num_coeffs; k-- > 0;) {
      acc = scalar_mul1(f, acc, xs[i]) ^ coeffs[k];
    }
    const bool hit = acc == ys[i];
    matched += hit;
    if (hits != nullptr) hits[i] = hit;
  }
  return matched;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{KernelBackend::kScalar, "scalar",
                                 &scalar_mul1,           &scalar_mul,
                                 &scalar_slopes,         &scalar_count_on_poly};
  return table;
}

}  // namespace linemark
