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

#include <doctest.h>

#include <bit>
#include <string>
#include <vector>

#include "linemark/codec.hpp"
#include "linemark/error.hpp"
#include "oracles/keccak.hpp"
#include "support.hpp"

using namespace linemark;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

std::vector<std::uint8_t> be8(std::uint64_t v) {
  std::vector<std::uint8_t> out(8);
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
  return out;
}

std::vector<std::uint8_t> concat(std::vector<std::uint8_t> a, std::span<const std::uint8_t> b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const SecretKey kKey = SecretKey::from_hex("000102030405060708090a0b0c0d0e0f");

}  // namespace

TEST_SUITE("codec") {

TEST_CASE("SHA3-256 known answers") {
  CHECK(to_hex(sha3_256({})) ==
        "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");
  const auto abc = bytes_of("abc");
  CHECK(to_hex(sha3_256(abc)) ==
        "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532");
  const auto o = oracle::sha3_256({});
  CHECK(to_hex(o) == "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");
}

TEST_CASE("SHA3-256 matches the reference sponge across block boundaries") {
  Rng rng(1);
  for (std::size_t len : {1u, 8u, 24u, 135u, 136u, 137u, 271u, 272u, 500u}) {
    std::vector<std::uint8_t> msg(len);
    for (auto& b : msg) b = static_cast<std::uint8_t>(rng.next());
    const auto want = oracle::sha3_256(msg);
    const Digest got = sha3_256(msg);
    REQUIRE(std::equal(got.begin(), got.end(), want.begin()));
  }
}

TEST_CASE("partition bit is the parity of the keyed digest") {
  const std::vector<std::uint8_t> key(kKey.bytes().begin(), kKey.bytes().end());
  for (TokenId id : {0u, 1u, 2u, 255u, 256u, 50256u, 4294967295u}) {
    const auto h = oracle::sha3_256(concat(key, be8(id)));
    int ones = 0;
    for (std::uint8_t b : h) ones += std::popcount(b);
    CHECK(partition_bit(id, kKey) == (ones % 2 == 1));
  }
}

TEST_CASE("derive_x takes the leading bits of the digest") {
  const std::vector<std::uint8_t> key(kKey.bytes().begin(), kKey.bytes().end());
  for (unsigned n : testing_support::widths()) {
    const Field f(n);
    for (TokenId id : {0u, 7u, 31999u}) {
      const auto h = oracle::sha3_256(concat(be8(id), key));
      std::uint64_t want = 0;
      for (unsigned bit = 0; bit < n; ++bit) {
        want = (want << 1) | ((h[bit / 8] >> (7 - bit % 8)) & 1);
      }
      CAPTURE(n);
      CHECK(derive_x(id, kKey, f) == want);
    }
  }
}

TEST_CASE("value bits are big-endian") {
  const Field f(8);
  CHECK(value_bits(f, 0x81) == Bits{1, 0, 0, 0, 0, 0, 0, 1});
  CHECK(bits_value(f, Bits{0, 0, 0, 0, 0, 1, 1, 0}) == 6);
  CHECK_THROWS_AS(bits_value(f, Bits{1, 0}), LengthError);
  Rng rng(2);
  for (unsigned n : testing_support::widths()) {
    const Field g(n);
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t v = testing_support::draw(rng, g);
      REQUIRE(bits_value(g, value_bits(g, v)) == v);
    }
  }
}

TEST_CASE("identity encoding") {
  const Field f(8);
  const Bits bits{1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 1};
  const Identity id = encode_identity(bits, f, 2);
  CHECK(id.poly() == Polynomial(f, {0xaa, 0x0f}));
  CHECK(decode_identity(id) == bits);
  CHECK(id.hex() == "aa0f");
  CHECK(Identity::from_hex(f, 2, "AA0F") == id);
  CHECK_THROWS_AS(encode_identity(Bits(15), f, 2), LengthError);
}

TEST_CASE("identity hex pads to whole bytes") {
  const Field f(6);
  const Identity id(Polynomial(f, {0x3f, 0x01}));
  // 12 bits: 0000 111111 000001
  CHECK(id.hex() == "0fc1");
  CHECK(id.bytes() == std::vector<std::uint8_t>{0x0f, 0xc1});
  CHECK(Identity::from_hex(f, 2, "0fc1") == id);
  CHECK_THROWS_AS(Identity::from_hex(f, 2, "1fc1"), ParseError);
  CHECK_THROWS_AS(Identity::from_hex(f, 2, "fc1"), ParseError);
  CHECK_THROWS_AS(Identity::from_hex(f, 2, "0fcz"), ParseError);
}

TEST_CASE("identity round trip in every field") {
  Rng rng(3);
  for (unsigned n : testing_support::widths()) {
    const Field f(n);
    for (std::size_t t = 1; t <= 4; ++t) {
      std::vector<std::uint64_t> c(t);
      for (auto& v : c) v = testing_support::draw(rng, f);
      const Identity id(Polynomial(f, c));
      CHECK(id.hex().size() == 2 * ((t * n + 7) / 8));
      CHECK(Identity::from_hex(f, t, id.hex()) == id);
      CHECK(encode_identity(id.bits(), f, t) == id);
    }
  }
}

TEST_CASE("secret key parsing") {
  CHECK(kKey.hex() == "000102030405060708090a0b0c0d0e0f");
  CHECK_THROWS_AS(SecretKey::from_hex("0001"), ParseError);
  CHECK_THROWS_AS(SecretKey::from_hex("000102030405060708090a0b0c0d0e0"), ParseError);
  CHECK_THROWS_AS(SecretKey::from_hex("000102030405060708090a0b0c0d0e0g"), ParseError);
  CHECK_THROWS_AS(from_hex("abc"), ParseError);
}

TEST_CASE("vocabulary partition") {
  const std::size_t vocab = 4096;
  const auto part = vocab_partition(kKey, vocab);
  CHECK(part == vocab_partition(kKey, vocab));
  CHECK(part->side(false).size() + part->side(true).size() == vocab);
  for (TokenId id = 0; id < vocab; ++id) {
    REQUIRE(part->bit(id) == partition_bit(id, kKey));
    REQUIRE(part->side(part->bit(id)).contains(id));
    REQUIRE_FALSE(part->side(!part->bit(id)).contains(id));
  }
  // Balanced within four standard deviations.
  const double ones = static_cast<double>(part->side(true).size());
  CHECK(std::abs(ones - vocab / 2.0) < 4 * std::sqrt(vocab / 4.0));
}

}  // TEST_SUITE
