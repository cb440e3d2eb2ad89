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

#ifndef LINEMARK_TESTS_ORACLES_GF_REF_HPP_
#define LINEMARK_TESTS_ORACLES_GF_REF_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

// Field described by its full modulus (bit n set), kept in 128 bits.
struct RefField {
  unsigned n;
  unsigned __int128 modulus;

  std::uint64_t mask() const { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

  // Russian-peasant multiplication, reducing after every doubling.
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    unsigned __int128 acc = 0;
    unsigned __int128 x = a;
    for (unsigned i = 0; i < n; ++i) {
      if ((b >> i) & 1) acc ^= x;
      x <<= 1;
      if ((x >> n) & 1) x ^= modulus;
    }
    return static_cast<std::uint64_t>(acc);
  }

  std::uint64_t pow(std::uint64_t a, unsigned __int128 e) const {
    std::uint64_t r = 1;
    for (int i = 127; i >= 0; --i) {
      r = mul(r, r);
      if ((e >> i) & 1) r = mul(r, a);
    }
    return r;
  }

  // a^(2^n - 2).
  std::uint64_t inv(std::uint64_t a) const {
    return pow(a, (static_cast<unsigned __int128>(1) << n) - 2);
  }

  // Linear scan; only for small n.
  std::optional<std::uint64_t> inv_exhaustive(std::uint64_t a) const {
    for (std::uint64_t b = 1; b <= mask(); ++b) {
      if (mul(a, b) == 1) return b;
    }
    return std::nullopt;
  }

  std::uint64_t eval(const std::vector<std::uint64_t>& coeffs, std::uint64_t x) const {
    std::uint64_t acc = 0;
    std::uint64_t xp = 1;
    for (std::uint64_t c : coeffs) {
      acc ^= mul(c, xp);
      xp = mul(xp, x);
    }
    return acc;
  }
};

inline RefField ref_field(unsigned n, std::uint64_t modulus_low) {
  return {n, (static_cast<unsigned __int128>(1) << n) | modulus_low};
}

// Irreducibility by trial division over every polynomial of degree 1..n/2.
inline bool irreducible_trial(unsigned n, std::uint64_t modulus_low) {
  const unsigned __int128 f = (static_cast<unsigned __int128>(1) << n) | modulus_low;
  auto degree = [](unsigned __int128 v) {
    int d = -1;
    while (v) {
      v >>= 1;
      ++d;
    }
    return d;
  };
  for (unsigned d = 1; d <= n / 2; ++d) {
    for (std::uint64_t g = std::uint64_t{1} << d; g < (std::uint64_t{1} << (d + 1)); ++g) {
      unsigned __int128 r = f;
      while (degree(r) >= static_cast<int>(d)) r ^= static_cast<unsigned __int128>(g) << (degree(r) - d);
      if (r == 0) return false;
    }
  }
  return true;
}

struct RefPoint {
  std::uint64_t x;
  std::uint64_t y;
};

// Three points are collinear iff (y2-y1)(x3-x1) == (y3-y1)(x2-x1); no
// division involved. Vertical triples (all x equal) do not count, and a
// point equal to a defining point lies on that pair's line.
inline std::size_t max_collinear_triples(const RefField& f, const std::vector<RefPoint>& p) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j || p[i].x == p[j].x) continue;
      std::size_t on = 0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const std::uint64_t lhs = f.mul(p[j].y ^ p[i].y, p[k].x ^ p[i].x);
        const std::uint64_t rhs = f.mul(p[k].y ^ p[i].y, p[j].x ^ p[i].x);
        on += lhs == rhs;
      }
      if (on > best) best = on;
    }
  }
  return best;
}

}  // namespace oracle

#endif  // LINEMARK_TESTS_ORACLES_GF_REF_HPP_
