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

#ifndef LINEMARK_DETAIL_FIELD_DATA_HPP_
#define LINEMARK_DETAIL_FIELD_DATA_HPP_

#include <cstdint>
#include <vector>

namespace linemark::detail {

// Largest width served by log/exp tables.
inline constexpr unsigned kMaxTableBits = 16;

// Everything the arithmetic kernels need to know about one GF(2^n).
//
// The modulus is x^bits + low(x); `poly_low` holds low(x). For widths up
// to kMaxTableBits the log/exp tables are populated:
//   log[0]           = 2 * order   (sentinel, lands in the zero tail of exp)
//   log[a], a != 0   in [0, order)
//   exp[i]           = g^(i mod order) for i < 2 * order, 0 beyond
// so exp[log[a] + log[b]] == a * b for all a, b including zero.
struct FieldData {
  unsigned bits = 0;
  std::uint64_t mask = 0;
  std::uint64_t poly_low = 0;
  std::uint32_t order = 0;  // 2^bits - 1 when tables are present
  std::vector<std::int32_t> log;
  std::vector<std::int32_t> exp;

  bool has_tables() const { return !log.empty(); }
};

// Carry-less product of two 64-bit values as (hi, lo).
struct Clmul128 {
  std::uint64_t hi;
  std::uint64_t lo;
};

inline Clmul128 clmul_soft(std::uint64_t a, std::uint64_t b) {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  for (unsigned i = 0; i < 64; ++i) {
    const std::uint64_t m = 0 - ((b >> i) & 1u);
    lo ^= (a << i) & m;
    if (i != 0) hi ^= (a >> (64 - i)) & m;
  }
  return {hi, lo};
}

// Reduces hi * x^64 + lo modulo x^bits + poly_low by folding the part
// above bit `bits` back down. Canonical moduli have deg(poly_low) < bits / 2,
// so the loop runs at most twice for them.
inline std::uint64_t reduce_soft(const FieldData& f, Clmul128 p) {
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
    p = clmul_soft(high, f.poly_low);
  }
  return (acc ^ p.lo) & f.mask;
}

// Shift-and-reduce multiply; the scalar reference for widths above the
// table range.
inline std::uint64_t mul_shift_reduce(const FieldData& f, std::uint64_t a,
                                      std::uint64_t b) {
  return reduce_soft(f, clmul_soft(a, b));
}

}  // namespace linemark::detail

#endif  // LINEMARK_DETAIL_FIELD_DATA_HPP_
