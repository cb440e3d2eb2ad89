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

#include "linemark/poly.hpp"

#include <string>

#include "linemark/error.hpp"

namespace linemark {

Polynomial::Polynomial(Field field, std::vector<std::uint64_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw LengthError("polynomial needs a coefficient");
  for (std::uint64_t c : coeffs_) {
    if (!field_.contains(c)) {
      throw DomainError("coefficient outside GF(2^" +
                        std::to_string(field_.bits()) + ")");
    }
  }
}

std::uint64_t Polynomial::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    acc = field_.mul(acc, x) ^ coeffs_[k];
  }
  return acc;
}

FieldElement Polynomial::eval(const FieldElement& x) const {
  if (!(x.field() == field_)) throw FieldMismatchError();
  return {field_, eval(x.value())};
}

Polynomial interpolate(const Field& field, std::span<const Point> points) {
  if (points.empty()) throw LengthError("interpolation needs at least one point");
  std::vector<Point> unique;
  unique.reserve(points.size());
  for (const Point& p : points) {
    if (!field.contains(p.x) || !field.contains(p.y)) {
      throw DomainError("point outside GF(2^" + std::to_string(field.bits()) + ")");
    }
    bool seen = false;
    for (const Point& q : unique) {
      if (q.x != p.x) continue;
      if (q.y != p.y) {
        throw InconsistentPointsError("two points share x = " + field.to_hex(p.x) +
                                      " with different y");
      }
      seen = true;
      break;
    }
    if (!seen) unique.push_back(p);
  }

  const std::size_t t = unique.size();
  std::vector<std::uint64_t> result(t, 0);
  std::vector<std::uint64_t> basis;
  for (std::size_t j = 0; j < t; ++j) {
    // basis = prod_{m != j} (x - x_m), denom = prod_{m != j} (x_j - x_m).
    basis.assign(1, 1);
    std::uint64_t denom = 1;
    for (std::size_t m = 0; m < t; ++m) {
      if (m == j) continue;
      basis.push_back(0);
      for (std::size_t k = basis.size() - 1; k > 0; --k) {
        basis[k] = basis[k - 1] ^ field.mul(basis[k], unique[m].x);
      }
      basis[0] = field.mul(basis[0], unique[m].x);
      denom = field.mul(denom, unique[j].x ^ unique[m].x);
    }
    const std::uint64_t scale = field.mul(unique[j].y, field.inv(denom));
    for (std::size_t k = 0; k < t; ++k) result[k] ^= field.mul(scale, basis[k]);
  }
  return {field, std::move(result)};
}

Polynomial line_through(const Field& field, const Point& p, const Point& q) {
  if (p.x == q.x) {
    throw InconsistentPointsError("line through two points needs distinct x");
  }
  const std::uint64_t slope = field.div(p.y ^ q.y, p.x ^ q.x);
  return {field, {p.y ^ field.mul(slope, p.x), slope}};
}

}  // namespace linemark
