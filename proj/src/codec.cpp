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

#include "linemark/codec.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

#include "linemark/error.hpp"

namespace linemark {
namespace {

struct Sha3Context {
  EVP_MD* md = EVP_MD_fetch(nullptr, "SHA3-256", nullptr);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();

  Sha3Context() {
    if (md == nullptr || ctx == nullptr) throw Error("OpenSSL SHA3-256 unavailable");
  }
  ~Sha3Context() {
    EVP_MD_CTX_free(ctx);
    EVP_MD_free(md);
  }
  Sha3Context(const Sha3Context&) = delete;
  Sha3Context& operator=(const Sha3Context&) = delete;
};

Digest hash_parts(std::span<const std::uint8_t> first,
                  std::span<const std::uint8_t> second) {
  thread_local Sha3Context sha3;
  Digest out{};
  unsigned int len = 0;
  if (EVP_DigestInit_ex(sha3.ctx, sha3.md, nullptr) != 1 ||
      EVP_DigestUpdate(sha3.ctx, first.data(), first.size()) != 1 ||
      EVP_DigestUpdate(sha3.ctx, second.data(), second.size()) != 1 ||
      EVP_DigestFinal_ex(sha3.ctx, out.data(), &len) != 1 || len != out.size()) {
    throw Error("SHA3-256 digest failed");
  }
  return out;
}

std::array<std::uint8_t, 8> token_bytes(TokenId id) {
  std::array<std::uint8_t, 8> b{};
  const std::uint64_t v = id;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
  return b;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Digest sha3_256(std::span<const std::uint8_t> data) {
  return hash_parts(data, {});
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out += kDigits[b >> 4];
    out += kDigits[b & 0xf];
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParseError("hex string has odd length");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw ParseError("invalid hex character in '" + std::string(hex) + "'");
    }
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

SecretKey SecretKey::from_hex(std::string_view hex) {
  if (hex.size() != 2 * kBytes) {
    throw ParseError("key must be " + std::to_string(2 * kBytes) +
                     " hex characters, got " + std::to_string(hex.size()));
  }
  const auto raw = linemark::from_hex(hex);
  std::array<std::uint8_t, kBytes> bytes{};
  std::copy(raw.begin(), raw.end(), bytes.begin());
  return SecretKey(bytes);
}

std::string SecretKey::hex() const { return to_hex(bytes_); }

bool partition_bit(TokenId token, const SecretKey& key) {
  const auto id = token_bytes(token);
  const Digest h = hash_parts(key.bytes(), id);
  std::uint8_t acc = 0;
  for (std::uint8_t b : h) acc ^= b;
  return (std::popcount(acc) & 1) != 0;
}

std::uint64_t derive_x(TokenId prev_token, const SecretKey& key, const Field& field) {
  const auto id = token_bytes(prev_token);
  const Digest h = hash_parts(id, key.bytes());
  std::uint64_t head = 0;
  for (int i = 0; i < 8; ++i) head = (head << 8) | h[i];
  return field.bits() == 64 ? head : head >> (64 - field.bits());
}

Bits value_bits(const Field& field, std::uint64_t y) {
  const unsigned n = field.bits();
  Bits out(n);
  for (unsigned i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>((y >> (n - 1 - i)) & 1);
  return out;
}

std::uint64_t bits_value(const Field& field, std::span<const std::uint8_t> bits) {
  if (bits.size() != field.bits()) {
    throw LengthError("expected " + std::to_string(field.bits()) + " bits, got " +
                      std::to_string(bits.size()));
  }
  std::uint64_t v = 0;
  for (std::uint8_t b : bits) v = (v << 1) | (b & 1u);
  return v;
}

Bits Identity::bits() const { return decode_identity(*this); }

std::vector<std::uint8_t> Identity::bytes() const {
  const Bits b = bits();
  const std::size_t num_bytes = (b.size() + 7) / 8;
  const std::size_t pad = num_bytes * 8 - b.size();
  std::vector<std::uint8_t> out(num_bytes, 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::size_t pos = pad + i;
    if (b[i]) out[pos / 8] |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
  }
  return out;
}

std::string Identity::hex() const { return to_hex(bytes()); }

Identity Identity::from_hex(const Field& field, std::size_t num_coeffs,
                            std::string_view hex) {
  const std::size_t total_bits = num_coeffs * field.bits();
  const std::size_t num_bytes = (total_bits + 7) / 8;
  if (hex.size() != 2 * num_bytes) {
    throw ParseError("identity for t=" + std::to_string(num_coeffs) + ", n=" +
                     std::to_string(field.bits()) + " must be " +
                     std::to_string(2 * num_bytes) + " hex digits, got " +
                     std::to_string(hex.size()));
  }
  const auto raw = linemark::from_hex(hex);
  const std::size_t pad = num_bytes * 8 - total_bits;
  Bits bits(total_bits);
  for (std::size_t pos = 0; pos < num_bytes * 8; ++pos) {
    const std::uint8_t bit = (raw[pos / 8] >> (7 - pos % 8)) & 1u;
    if (pos < pad) {
      if (bit) throw ParseError("identity has bits set above t*n");
    } else {
      bits[pos - pad] = bit;
    }
  }
  return encode_identity(bits, field, num_coeffs);
}

Identity encode_identity(std::span<const std::uint8_t> bits, const Field& field,
                         std::size_t num_coeffs) {
  const std::size_t n = field.bits();
  if (num_coeffs == 0 || bits.size() != num_coeffs * n) {
    throw LengthError("identity needs " + std::to_string(num_coeffs * n) +
                      " bits, got " + std::to_string(bits.size()));
  }
  std::vector<std::uint64_t> coeffs(num_coeffs);
  for (std::size_t i = 0; i < num_coeffs; ++i) {
    coeffs[i] = bits_value(field, bits.subspan(i * n, n));
  }
  return Identity(Polynomial(field, std::move(coeffs)));
}

Bits decode_identity(const Identity& identity) {
  Bits out;
  out.reserve(identity.num_coeffs() * identity.field().bits());
  for (std::uint64_t c : identity.poly().coeffs()) {
    const Bits b = value_bits(identity.field(), c);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

TokenSet::TokenSet(std::size_t vocab_size, std::vector<TokenId> ids)
    : ids_(std::move(ids)), member_(vocab_size, 0) {
  for (TokenId id : ids_) {
    if (id >= vocab_size) throw DomainError("token id outside vocabulary");
    member_[id] = 1;
  }
}

VocabPartition::VocabPartition(const SecretKey& key, std::size_t vocab_size)
    : bits_(vocab_size) {
  std::vector<TokenId> zeros;
  std::vector<TokenId> ones;
  for (std::size_t id = 0; id < vocab_size; ++id) {
    const bool b = partition_bit(static_cast<TokenId>(id), key);
    bits_[id] = b;
    (b ? ones : zeros).push_back(static_cast<TokenId>(id));
  }
  zeros_ = TokenSet(vocab_size, std::move(zeros));
  ones_ = TokenSet(vocab_size, std::move(ones));
}

constexpr std::size_t kPartitionCacheEntries = 64;

std::shared_ptr<const VocabPartition> vocab_partition(const SecretKey& key,
                                                      std::size_t vocab_size) {
  using CacheKey = std::pair<std::string, std::size_t>;
  static std::shared_mutex mu;
  static std::map<CacheKey, std::shared_ptr<const VocabPartition>> cache;
  const CacheKey k{key.hex(), vocab_size};
  {
    std::shared_lock lock(mu);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const VocabPartition>(key, vocab_size);
  std::unique_lock lock(mu);
  if (cache.size() >= kPartitionCacheEntries) cache.clear();
  // A concurrent builder may have won; both results are identical.
  auto [it, inserted] = cache.emplace(k, std::move(built));
  return it->second;
}

}  // namespace linemark
