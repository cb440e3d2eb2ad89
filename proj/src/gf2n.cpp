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

#include "linemark/gf2n.hpp"

#include <array>
#include <bit>
#include <mutex>
#include <sstream>

#include "linemark/error.hpp"
#include "linemark/kernels.hpp"

namespace linemark {
namespace {

using u128 = unsigned __int128;

struct CanonicalModulus {
  unsigned bits;
  std::uint64_t low;
};

// Smallest irreducible polynomial of each degree, except n = 8 which uses
// the AES polynomial x^8 + x^4 + x^3 + x + 1.
constexpr CanonicalModulus kCanonical[] = {
    {6, 0x03},                  // x^6 + x + 1
    {8, 0x1b},                  // x^8 + x^4 + x^3 + x + 1
    {12, 0x009},                // x^12 + x^3 + 1
    {16, 0x002b},               // x^16 + x^5 + x^3 + x + 1
    {32, 0x0000008d},           // x^32 + x^7 + x^3 + x^2 + 1
    {64, 0x000000000000001b},   // x^64 + x^4 + x^3 + x + 1
};

int degree(u128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 127 - std::countl_zero(hi);
  const auto lo = static_cast<std::uint64_t>(v);
  return lo == 0 ? -1 : 63 - std::countl_zero(lo);
}

u128 full_modulus(unsigned bits, std::uint64_t low) {
  return (u128{1} << bits) | low;
}

u128 poly_mod(u128 a, u128 m) {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

u128 poly_gcd(u128 a, u128 b) {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

detail::FieldData make_ring(unsigned bits, std::uint64_t low) {
  detail::FieldData d;
  d.bits = bits;
  d.mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  d.poly_low = low;
  return d;
}

// x^(2^k) mod f.
std::uint64_t x_pow_pow2(const detail::FieldData& ring, unsigned k) {
  std::uint64_t v = ring.bits == 1 ? 0 : 2;
  for (unsigned i = 0; i < k; ++i) v = detail::mul_shift_reduce(ring, v, v);
  return v;
}

void build_tables(detail::FieldData& d) {
  const std::uint32_t order = (std::uint32_t{1} << d.bits) - 1;
  d.order = order;
  d.exp.assign(std::size_t{4} * order + 1, 0);
  d.log.assign(std::size_t{order} + 1, 0);
  // Smallest primitive element.
  for (std::uint64_t g = 2;; ++g) {
    std::uint64_t v = 1;
    bool primitive = true;
    for (std::uint32_t i = 0; i < order; ++i) {
      if (v == 1 && i != 0) {
        primitive = false;
        break;
      }
      d.exp[i] = static_cast<std::int32_t>(v);
      v = detail::mul_shift_reduce(d, v, g);
    }
    if (primitive) break;
  }
  for (std::uint32_t i = 0; i < order; ++i) {
    d.exp[order + i] = d.exp[i];
    d.log[static_cast<std::uint32_t>(d.exp[i])] = static_cast<std::int32_t>(i);
  }
  d.log[0] = static_cast<std::int32_t>(2 * order);
}

std::shared_ptr<const detail::FieldData> make_field(unsigned bits,
                                                    std::uint64_t low) {
  if (bits == 0 || bits > 64) {
    throw ConfigError("field width must be in 1..64");
  }
  auto d = std::make_shared<detail::FieldData>(make_ring(bits, low));
  if ((low & ~d->mask) != 0) {
    throw ConfigError("modulus has terms above x^" + std::to_string(bits));
  }
  if (!is_irreducible(bits, low)) {
    std::ostringstream os;
    os << "modulus 0x" << std::hex << static_cast<std::uint64_t>(low)
       << " + x^" << std::dec << bits << " is reducible";
    throw ConfigError(os.str());
  }
  if (bits <= detail::kMaxTableBits) build_tables(*d);
  return d;
}

std::shared_ptr<const detail::FieldData> canonical_field(unsigned bits) {
  static std::mutex mu;
  static std::array<std::shared_ptr<const detail::FieldData>, 65> cache;
  const std::uint64_t low = canonical_modulus_low(bits);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[bits];
  if (!slot) slot = make_field(bits, low);
  return slot;
}

std::string supported_list() {
  std::string s = "{";
  for (unsigned w : kSupportedWidths) {
    if (s.size() > 1) s += ", ";
    s += std::to_string(w);
  }
  return s + "}";
}

}  // namespace

bool is_supported_width(unsigned bits) {
  for (unsigned w : kSupportedWidths) {
    if (w == bits) return true;
  }
  return false;
}

std::uint64_t canonical_modulus_low(unsigned bits) {
  for (const auto& c : kCanonical) {
    if (c.bits == bits) return c.low;
  }
  throw ConfigError("unsupported field GF(2^" + std::to_string(bits) + ")" +
                    "; supported widths are " + supported_list());
}

bool is_irreducible(unsigned bits, std::uint64_t modulus_low) {
  if (bits == 0 || bits > 64) return false;
  const auto ring = make_ring(bits, modulus_low);
  if ((modulus_low & ~ring.mask) != 0) return false;
  if ((modulus_low & 1) == 0) return false;  // divisible by x
  if (bits == 1) return true;
  // x^(2^n) == x mod f ...
  if (x_pow_pow2(ring, bits) != 2) return false;
  // ... and gcd(x^(2^(n/q)) - x, f) == 1 for every prime q | n.
  const u128 f = full_modulus(bits, modulus_low);
  unsigned rest = bits;
  for (unsigned q = 2; q <= rest; ++q) {
    if (rest % q != 0) continue;
    while (rest % q == 0) rest /= q;
    const u128 h = x_pow_pow2(ring, bits / q) ^ std::uint64_t{2};
    if (degree(poly_gcd(f, h)) != 0) return false;
  }
  return true;
}

Field::Field(unsigned bits) : data_(canonical_field(bits)) {}

Field::Field(unsigned bits, std::uint64_t modulus_low) {
  if (bits <= 64 && is_supported_width(bits) &&
      canonical_modulus_low(bits) == modulus_low) {
    data_ = canonical_field(bits);
  } else {
    data_ = make_field(bits, modulus_low);
  }
}

std::string Field::modulus_hex() const {
  const u128 m = full_modulus(bits(), modulus_low());
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (int shift = (degree(m) / 4) * 4; shift >= 0; shift -= 4) {
    out += kDigits[static_cast<unsigned>(m >> shift) & 0xf];
  }
  return out;
}

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
  const auto& d = *data_;
  if (d.has_tables()) {
    return static_cast<std::uint64_t>(d.exp[d.log[a] + d.log[b]]);
  }
  return active_kernels().mul1(d, a, b);
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a == 0) throw DivisionByZeroError();
  const auto& d = *data_;
  if (d.has_tables()) {
    return static_cast<std::uint64_t>(d.exp[d.order - d.log[a]]);
  }
  // Extended Euclid over GF(2)[x]; g1 * a == u (mod f) throughout.
  u128 u = a;
  u128 v = full_modulus(d.bits, d.poly_low);
  u128 g1 = 1;
  u128 g2 = 0;
  while (u != 1) {
    int j = degree(u) - degree(v);
    if (j < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      j = -j;
    }
    u ^= v << j;
    g1 ^= g2 << j;
  }
  return static_cast<std::uint64_t>(poly_mod(g1, full_modulus(d.bits, d.poly_low)));
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1;
  while (e != 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::string Field::to_hex(std::uint64_t v) const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(hex_digits(), '0');
  for (std::size_t i = out.size(); i-- > 0; v >>= 4) out[i] = kDigits[v & 0xf];
  return out;
}

std::uint64_t Field::from_hex(std::string_view hex) const {
  if (hex.empty() || hex.size() > hex_digits()) {
    throw ParseError("field element '" + std::string(hex) + "' must have 1.." +
                     std::to_string(hex_digits()) + " hex digits");
  }
  std::uint64_t v = 0;
  for (char c : hex) {
    unsigned digit;
    if (c >= '0' && c <= '9') {
      digit = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      digit = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      digit = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw ParseError("invalid hex digit in '" + std::string(hex) + "'");
    }
    v = (v << 4) | digit;
  }
  if (!contains(v)) {
    throw ParseError("value 0x" + std::string(hex) + " exceeds GF(2^" +
                     std::to_string(bits()) + ")");
  }
  return v;
}

FieldElement::FieldElement(Field field, std::uint64_t value)
    : field_(std::move(field)), value_(value) {
  if (!field_.contains(value)) {
    throw DomainError("value does not fit in GF(2^" +
                      std::to_string(field_.bits()) + ")");
  }
}

FieldElement FieldElement::inv() const {
  return {field_, field_.inv(value_)};
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatchError();
  return {a.field_, a.value_ ^ b.value_};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatchError();
  return {a.field_, a.field_.mul(a.value_, b.value_)};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatchError();
  return {a.field_, a.field_.div(a.value_, b.value_)};
}

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement inv(const FieldElement& a) { return a.inv(); }

}  // namespace linemark
