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

// AVX2 gathers for table-driven widths, PCLMULQDQ for the wide fields.
// This translation unit is compiled with -mavx2 -mpclmul and only entered
// after a CPUID check.

#include <immintrin.h>

#include "linemark/kernels.hpp"

namespace linemark {
namespace {

using detail::FieldData;

inline detail::Clmul128 clmul_hw(std::uint64_t a, std::uint64_t b) {
  const __m128i va = _mm_cvtsi64_si128(static_cast<long long>(a));
  const __m128i vb = _mm_cvtsi64_si128(static_cast<long long>(b));
  const __m128i p = _mm_clmulepi64_si128(va, vb, 0x00);
  return {static_cast<std::uint64_t>(_mm_extract_epi64(p, 1)),
          static_cast<std::uint64_t>(_mm_cvtsi128_si64(p))};
}

inline std::uint64_t reduce_hw(const FieldData& f, detail::Clmul128 p) {
  const unsigned n = f.bits;
  std::uint64_t acc = 0;
  while (p.hi != 0 || (n < 64 && (p.lo >> n) != 0)) {
    std::uint64_t high;
    if (n == 64) {
      high = p.hi;
      acc ^= p.lo;
    } else {
      high = (p.lo >> n) | (p.hi << (64 - n));
      acc ^= p.lo & f.mask;
    }
    p = clmul_hw(high, f.poly_low);
  }
  return (acc ^ p.lo) & f.mask;
}

inline std::uint64_t wide_mul(const FieldData& f, std::uint64_t a,
                              std::uint64_t b) {
  return reduce_hw(f, clmul_hw(a, b));
}

std::uint64_t avx2_mul1(const FieldData& f, std::uint64_t a,
                        std::uint64_t b) {
  if (f.has_tables()) {
    return static_cast<std::uint64_t>(f.exp[f.log[a] + f.log[b]]);
  }
  return wide_mul(f, a, b);
}

// log[v] for four 64-bit lanes, as four 32-bit lanes.
inline __m128i gather_log(const FieldData& f, __m256i v) {
  return _mm256_i64gather_epi32(f.log.data(), v, 4);
}

inline __m128i gather_exp(const FieldData& f, __m128i idx) {
  return _mm_i32gather_epi32(f.exp.data(), idx, 4);
}

void avx2_mul(const FieldData& f, const std::uint64_t* a,
              const std::uint64_t* b, std::uint64_t* out, std::size_t count) {
  std::size_t i = 0;
  if (f.has_tables()) {
    for (; i + 4 <= count; i += 4) {
      const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      const __m128i idx = _mm_add_epi32(gather_log(f, va), gather_log(f, vb));
      const __m256i prod = _mm256_cvtepu32_epi64(gather_exp(f, idx));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), prod);
    }
    for (; i < count; ++i) {
      out[i] = static_cast<std::uint64_t>(f.exp[f.log[a[i]] + f.log[b[i]]]);
    }
    return;
  }
  for (; i < count; ++i) out[i] = wide_mul(f, a[i], b[i]);
}

void avx2_slopes(const FieldData& f, std::uint64_t x0, std::uint64_t y0,
                 const std::uint64_t* xs, const std::uint64_t* ys,
                 std::uint64_t* out, std::size_t count) {
  std::size_t i = 0;
  if (f.has_tables()) {
    const __m256i vx0 = _mm256_set1_epi64x(static_cast<long long>(x0));
    const __m256i vy0 = _mm256_set1_epi64x(static_cast<long long>(y0));
    const __m128i order = _mm_set1_epi32(static_cast<int>(f.order));
    const __m128i zero = _mm_setzero_si128();
    for (; i + 4 <= count; i += 4) {
      const __m256i dx = _mm256_xor_si256(
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(xs + i)), vx0);
      const __m256i dy = _mm256_xor_si256(
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ys + i)), vy0);
      const __m128i log_dx = gather_log(f, dx);
      const __m128i log_dy = gather_log(f, dy);
      __m128i idx = _mm_sub_epi32(_mm_add_epi32(log_dy, order), log_dx);
      // dx == 0 lanes carry the sentinel log; park them on index 0.
      const __m128i vertical =
          _mm_cmpeq_epi32(log_dx, _mm_add_epi32(order, order));
      idx = _mm_blendv_epi8(idx, zero, vertical);
      const __m128i s = _mm_andnot_si128(vertical, gather_exp(f, idx));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                          _mm256_cvtepu32_epi64(s));
    }
    const std::int32_t ord = static_cast<std::int32_t>(f.order);
    for (; i < count; ++i) {
      const std::uint64_t dx = xs[i] ^ x0;
      out[i] = dx == 0 ? 0
                       : static_cast<std::uint64_t>(
                             f.exp[f.log[ys[i] ^ y0] + ord - f.log[dx]]);
    }
    return;
  }
  std::uint64_t acc = 1;
  for (; i < count; ++i) {
    out[i] = acc;
    const std::uint64_t dx = xs[i] ^ x0;
    if (dx != 0) acc = wide_mul(f, acc, dx);
  }
  // acc^(2^n - 2)
  std::uint64_t inv_acc = 1;
  std::uint64_t base = acc;
  for (unsigned k = 1; k < f.bits; ++k) {
    base = wide_mul(f, base, base);
    inv_acc = wide_mul(f, inv_acc, base);
  }
  for (i = count; i-- > 0;) {
    const std::uint64_t dx = xs[i] ^ x0;
    if (dx == 0) {
      out[i] = 0;
      continue;
    }
    const std::uint64_t inv_dx = wide_mul(f, inv_acc, out[i]);
    inv_acc = wide_mul(f, inv_acc, dx);
    out[i] = wide_mul(f, ys[i] ^ y0, inv_dx);
  }
}

std::size_t avx2_count_on_poly(const FieldData& f,
                               const std::uint64_t* coeffs,
                               std::size_t num_coeffs,
                               const std::uint64_t* xs,
                               const std::uint64_t* ys, std::size_t count,
                               std::uint8_t* hits) {
  std::size_t matched = 0;
  std::size_t i = 0;
  if (f.has_tables() && num_coeffs > 0) {
    const __m128i top = _mm_set1_epi32(static_cast<int>(coeffs[num_coeffs - 1]));
    for (; i + 4 <= count; i += 4) {
      const __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(xs + i));
      const __m128i log_x = gather_log(f, vx);
      __m128i acc = top;
      for (std::size_t k = num_coeffs - 1; k-- > 0;) {
        const __m128i log_acc = _mm_i32gather_epi32(f.log.data(), acc, 4);
        acc = gather_exp(f, _mm_add_epi32(log_acc, log_x));
        acc = _mm_xor_si128(acc, _mm_set1_epi32(static_cast<int>(coeffs[k])));
      }
      const __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ys + i));
      const __m256i eq = _mm256_cmpeq_epi64(_mm256_cvtepu32_epi64(acc), vy);
      const unsigned mask = static_cast<unsigned>(
          _mm256_movemask_pd(_mm256_castsi256_pd(eq)));
      matched += static_cast<std::size_t>(__builtin_popcount(mask));
      if (hits != nullptr) {
        for (unsigned lane = 0; lane < 4; ++lane) hits[i + lane] = (mask >> lane) & 1;
      }
    }
  }
  for (; i < count; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t k = num_coeffs; k-- > 0;) {
      acc = avx2_mul1(f, acc, xs[i]) ^ coeffs[k];
    }
    const bool hit = acc == ys[i];
    matched += hit;
    if (hits != nullptr) hits[i] = hit;
  }
  return matched;
}

}  // namespace

namespace detail {

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{KernelBackend::kAvx2, "avx2",
                                 &avx2_mul1,           &avx2_mul,
                                 &avx2_slopes,         &avx2_count_on_poly};
  return table;
}

}  // namespace detail
}  // namespace linemark
