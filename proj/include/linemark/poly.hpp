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

#ifndef LINEMARK_POLY_HPP_
#define LINEMARK_POLY_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "linemark/gf2n.hpp"

namespace linemark {

// A point of the GF(2^n) plane. Coordinates are raw field values; the
// field travels with the container (Polynomial, PointSet).
struct Point {
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Polynomial over GF(2^n), coefficient i multiplies x^i.
class Polynomial {
 public:
  // Throws LengthError for an empty coefficient list and DomainError for
  // coefficients outside the field.
  Polynomial(Field field, std::vector<std::uint64_t> coeffs);

  static Polynomial zero(Field field, std::size_t num_coeffs = 1) {
    return {std::move(field), std::vector<std::uint64_t>(num_coeffs, 0)};
  }

  const Field& field() const { return field_; }
  std::span<const std::uint64_t> coeffs() const { return coeffs_; }
  std::uint64_t coeff(std::size_t i) const { return coeffs_.at(i); }
  std::size_t size() const { return coeffs_.size(); }
  // Declared degree, len - 1; trailing zeros are kept.
  std::size_t degree() const { return coeffs_.size() - 1; }

  // Horner evaluation on a raw value (caller guarantees x is in the field).
  std::uint64_t eval(std::uint64_t x) const;
  // Checked evaluation; throws FieldMismatchError across fields.
  FieldElement eval(const FieldElement& x) const;

  bool passes_through(const Point& p) const { return eval(p.x) == p.y; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Field field_;
  std::vector<std::uint64_t> coeffs_;
};

// Unique polynomial with one coefficient per distinct x through `points`,
// built from the Lagrange basis. Consistent duplicates (same x and y) are
// merged; duplicates with different y throw InconsistentPointsError.
// Throws LengthError when `points` is empty.
Polynomial interpolate(const Field& field, std::span<const Point> points);

// Line through two points with distinct x: [a0, a1].
Polynomial line_through(const Field& field, const Point& p, const Point& q);

}  // namespace linemark

#endif  // LINEMARK_POLY_HPP_
