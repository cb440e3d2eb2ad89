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

#ifndef LINEMARK_CODEC_HPP_
#define LINEMARK_CODEC_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linemark/gf2n.hpp"
#include "linemark/poly.hpp"

namespace linemark {

// Bit order is big-endian everywhere: element 0 is the most significant bit.
using Bits = std::vector<std::uint8_t>;

using TokenId = std::uint32_t;

using Digest = std::array<std::uint8_t, 32>;

// SHA3-256 (FIPS 202).
Digest sha3_256(std::span<const std::uint8_t> data);

// 128-bit secret shared by embedder and verifier.
class SecretKey {
 public:
  static constexpr std::size_t kBytes = 16;

  SecretKey() = default;
  explicit SecretKey(const std::array<std::uint8_t, kBytes>& bytes) : bytes_(bytes) {}

  // Exactly 32 hex characters; throws ParseError otherwise.
  static SecretKey from_hex(std::string_view hex);
  std::string hex() const;

  std::span<const std::uint8_t, kBytes> bytes() const { return bytes_; }

  friend bool operator==(const SecretKey&, const SecretKey&) = default;

 private:
  std::array<std::uint8_t, kBytes> bytes_{};
};

// Parity of SHA3-256(key || id as 8 bytes big-endian): the token's side of
// the vocabulary partition.
bool partition_bit(TokenId token, const SecretKey& key);

// First n bits of SHA3-256(id as 8 bytes big-endian || key).
std::uint64_t derive_x(TokenId prev_token, const SecretKey& key, const Field& field);

// Big-endian expansion of y into field.bits() bits.
Bits value_bits(const Field& field, std::uint64_t y);
// Inverse of value_bits; throws LengthError unless bits.size() == n.
std::uint64_t bits_value(const Field& field, std::span<const std::uint8_t> bits);

// The watermark payload K = (a0 || a1 || ...), one coefficient per n bits.
class Identity {
 public:
  explicit Identity(Polynomial poly) : poly_(std::move(poly)) {}

  const Polynomial& poly() const { return poly_; }
  const Field& field() const { return poly_.field(); }
  // Coefficient count t (2 for a line).
  std::size_t num_coeffs() const { return poly_.size(); }

  // t * n bits, a0 first.
  Bits bits() const;
  // The bits as bytes, left-padded with zero bits to a whole byte count.
  std::vector<std::uint8_t> bytes() const;
  // 2 * ceil(t * n / 8) lowercase hex digits.
  std::string hex() const;
  // Throws ParseError on wrong length, bad digits or set padding bits.
  static Identity from_hex(const Field& field, std::size_t num_coeffs,
                           std::string_view hex);

  friend bool operator==(const Identity& a, const Identity& b) {
    return a.poly_ == b.poly_;
  }

 private:
  Polynomial poly_;
};

// Splits t * n bits big-endian into a0 .. a_{t-1}. Throws LengthError when
// bits.size() != t * n.
Identity encode_identity(std::span<const std::uint8_t> bits, const Field& field,
                         std::size_t num_coeffs);
Bits decode_identity(const Identity& identity);

// Membership set over token ids.
class TokenSet {
 public:
  TokenSet() = default;
  TokenSet(std::size_t vocab_size, std::vector<TokenId> ids);

  bool contains(TokenId id) const { return id < member_.size() && member_[id]; }
  const std::vector<TokenId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

 private:
  std::vector<TokenId> ids_;
  std::vector<std::uint8_t> member_;
};

// V_0 / V_1 split of a vocabulary under one key.
class VocabPartition {
 public:
  VocabPartition(const SecretKey& key, std::size_t vocab_size);

  std::size_t vocab_size() const { return bits_.size(); }
  bool bit(TokenId id) const { return bits_.at(id) != 0; }
  const TokenSet& side(bool bit) const { return bit ? ones_ : zeros_; }

 private:
  std::vector<std::uint8_t> bits_;
  TokenSet zeros_;
  TokenSet ones_;
};

// Memoized partition; concurrent callers share one instance per (key, V).
std::shared_ptr<const VocabPartition> vocab_partition(const SecretKey& key,
                                                      std::size_t vocab_size);

std::string to_hex(std::span<const std::uint8_t> bytes);
// Throws ParseError on odd length or non-hex characters.
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace linemark

#endif  // LINEMARK_CODEC_HPP_
