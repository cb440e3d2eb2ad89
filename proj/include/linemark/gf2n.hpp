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

#ifndef LINEMARK_GF2N_HPP_
#define LINEMARK_GF2N_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "linemark/detail/field_data.hpp"

namespace linemark {

// Field widths with a canonical modulus.
inline constexpr unsigned kSupportedWidths[] = {6, 8, 12, 16, 32, 64};

bool is_supported_width(unsigned bits);

// Canonical modulus for `bits`, without the x^bits term.
// Throws ConfigError for unsupported widths.
std::uint64_t canonical_modulus_low(unsigned bits);

// GF(2^n) with a fixed irreducible modulus (the FieldSpec).
//
// A Field is a cheap handle to shared immutable data; copies compare equal
// iff they describe the same width and modulus. Raw-value operations take
// and return plain integers below 2^n; FieldElement wraps them with the
// field attached for checked arithmetic.
class Field {
 public:
  // Canonical field for `bits`; throws ConfigError naming the supported set.
  explicit Field(unsigned bits);

  // Field with an explicit modulus (x^bits + modulus_low). The modulus is
  // tested for irreducibility; throws ConfigError when it is reducible.
  Field(unsigned bits, std::uint64_t modulus_low);

  unsigned bits() const { return data_->bits; }
  std::uint64_t mask() const { return data_->mask; }
  std::uint64_t modulus_low() const { return data_->poly_low; }
  // Full modulus as lowercase hex, e.g. "11b" for n = 8.
  std::string modulus_hex() const;
  // Hex digits used to print one element: ceil(n / 4).
  unsigned hex_digits() const { return (bits() + 3) / 4; }

  bool contains(std::uint64_t v) const { return (v & ~mask()) == 0; }

  static std::uint64_t add(std::uint64_t a, std::uint64_t b) { return a ^ b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t square(std::uint64_t a) const { return mul(a, a); }
  // Throws DivisionByZeroError for a == 0.
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t div(std::uint64_t a, std::uint64_t b) const {
    return mul(a, inv(b));
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

  std::string to_hex(std::uint64_t v) const;
  // Accepts up to hex_digits() hex characters; throws ParseError otherwise.
  std::uint64_t from_hex(std::string_view hex) const;

  const detail::FieldData& data() const { return *data_; }

  friend bool operator==(const Field& a, const Field& b) {
    return a.data_ == b.data_ || (a.bits() == b.bits() &&
                                  a.modulus_low() == b.modulus_low());
  }

 private:
  std::shared_ptr<const detail::FieldData> data_;
};

// Rabin's irreducibility test for x^bits + modulus_low over GF(2).
bool is_irreducible(unsigned bits, std::uint64_t modulus_low);

// Shorthand for the canonical field of a width.
inline Field field_spec(unsigned bits) { return Field(bits); }

class FieldElement {
 public:
  // Throws DomainError when value does not fit in the field.
  FieldElement(Field field, std::uint64_t value);

  static FieldElement zero(const Field& f) { return {f, 0}; }
  static FieldElement one(const Field& f) { return {f, 1}; }

  std::uint64_t value() const { return value_; }
  const Field& field() const { return field_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement inv() const;
  std::string hex() const { return field_.to_hex(value_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return a + b;
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_ && a.field_ == b.field_;
  }

 private:
  Field field_;
  std::uint64_t value_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

}  // namespace linemark

#endif  // LINEMARK_GF2N_HPP_
