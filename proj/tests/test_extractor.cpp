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

#include <vector>

#include "linemark/adversary.hpp"
#include "linemark/error.hpp"
#include "linemark/extractor.hpp"
#include "support.hpp"

using namespace linemark;

namespace {

struct Embedded {
  EmbedParams params;
  Identity identity;
  TokenStream stream;
};

Embedded make(unsigned n, std::size_t N, std::uint64_t seed, std::size_t t = 2) {
  Rng rng(seed);
  EmbedParams p;
  p.field = Field(n);
  p.num_points = N;
  p.key = random_key(rng);
  p.vocab_size = 1024;
  Identity id = random_identity(p.field, t, rng);
  MockSource src(rng.next(), p.vocab_size);
  TokenStream s = embed(id, src, p);
  return {p, id, s};
}

TokenStream random_stream(std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  TokenStream s{1024, {}};
  for (std::size_t i = 0; i < length; ++i) s.tokens.push_back(static_cast<TokenId>(rng.uniform(1024)));
  return s;
}

}  // namespace

TEST_SUITE("extractor") {

TEST_CASE("bit extraction skips the seed token") {
  const SecretKey key = SecretKey::from_hex("0123456789abcdef0123456789abcdef");
  CHECK(extract_bits(TokenStream{1024, {5}}, key).empty());
  CHECK(extract_bits(TokenStream{1024, {}}, key).empty());
  const TokenStream s = random_stream(50, 1);
  const Bits bits = extract_bits(s, key);
  REQUIRE(bits.size() == 49);
  for (std::size_t j = 1; j < s.size(); ++j) CHECK(bits[j - 1] == partition_bit(s.tokens[j], key));
}

TEST_CASE("independent keys agree on about half the bits") {
  TokenStream s{1 << 20, {}};
  for (TokenId t = 0; t < 4001; ++t) s.tokens.push_back(t * 97);
  Rng rng(3);
  const Bits a = extract_bits(s, random_key(rng));
  const Bits b = extract_bits(s, random_key(rng));
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  // 4000 fair coins: four standard deviations is 126.
  CHECK(std::abs(static_cast<double>(same) - 2000.0) < 126.0);
}

TEST_CASE("candidate count law") {
  const SecretKey key = SecretKey::from_hex("0123456789abcdef0123456789abcdef");
  for (unsigned n : {6u, 8u, 16u}) {
    for (std::size_t L : {n + 1, n + 2, 3 * n, 200u}) {
      CHECK(build_candidates(random_stream(L, L), key, Field(n)).size() == L - n);
    }
    CHECK_THROWS_AS(build_candidates(random_stream(n, 1), key, Field(n)),
                    InsufficientTokensError);
  }
}

TEST_CASE("budget examples") {
  const Embedded a = make(6, 16, 1);
  CHECK(build_candidates(a.stream, a.params.key, a.params.field).size() == 91);
  const Embedded b = make(8, 12, 2);
  const PointSet pts = build_candidates(b.stream, b.params.key, b.params.field);
  CHECK(pts.size() == 89);
  // The window starting at each block's x token is genuine.
  for (std::size_t i = 0; i < 12; ++i) CHECK(b.identity.poly().passes_through(pts[8 * i]));
  CHECK(points_on(pts, b.identity.poly()).size() >= 12);
}

TEST_CASE("sliding window survives deleting a prefix") {
  const Embedded e = make(12, 10, 4);
  const PointSet full = build_candidates(e.stream, e.params.key, e.params.field);
  for (std::size_t k : {1u, 5u, 12u, 40u}) {
    TokenStream cut = e.stream;
    cut.tokens.erase(cut.tokens.begin(), cut.tokens.begin() + static_cast<std::ptrdiff_t>(k));
    const PointSet suffix = build_candidates(cut, e.params.key, e.params.field);
    REQUIRE(suffix.size() == full.size() - k);
    for (std::size_t i = 0; i < suffix.size(); ++i) REQUIRE(suffix[i] == full[i + k]);
  }
}

TEST_CASE("round trip in every field") {
  for (unsigned n : {6u, 8u, 12u, 16u, 32u, 64u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Embedded e = make(n, 16, seed * 100 + n);
      const PointSet pts = build_candidates(e.stream, e.params.key, e.params.field);
      const RecoveryResult r = recover(pts, RecoveryConfig{});
      CAPTURE(n);
      REQUIRE(r.identity == e.identity);
      REQUIRE(r.accepted());
      REQUIRE(r.support >= 16);
      REQUIRE(r.total == pts.size());
      for (std::size_t i : r.supporting_indices) REQUIRE(r.identity.poly().passes_through(pts[i]));
    }
  }
}

TEST_CASE("solvers agree on an embedded line") {
  const Embedded e = make(16, 8, 7);
  const PointSet pts = build_candidates(e.stream, e.params.key, e.params.field);
  for (Solver s : {Solver::kBruteForce, Solver::kHashing, Solver::kRansac}) {
    RecoveryConfig cfg;
    cfg.solver = s;
    cfg.ransac_trials = 20000;
    const RecoveryResult r = recover(pts, cfg);
    CAPTURE(solver_name(s));
    CHECK(r.identity == e.identity);
    CHECK(r.accepted());
  }
}

TEST_CASE("quadratic identities through ransac") {
  const Embedded e = make(16, 20, 8, 3);
  const PointSet pts = build_candidates(e.stream, e.params.key, e.params.field);
  RecoveryConfig cfg;
  cfg.solver = Solver::kRansac;
  cfg.num_coeffs = 3;
  cfg.ransac_trials = 40000;
  cfg.seed = 1;
  const RecoveryResult r = recover(pts, cfg);
  CHECK(r.identity == e.identity);
  CHECK(r.accepted());
  CHECK(r.threshold > 3);
  cfg.solver = Solver::kHashing;
  CHECK_THROWS_AS(recover(pts, cfg), ConfigError);
}

TEST_CASE("unwatermarked streams are rejected") {
  const SecretKey key = SecretKey::from_hex("0123456789abcdef0123456789abcdef");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RecoveryResult r = recover(build_candidates(random_stream(400, seed), key, Field(16)),
                                     RecoveryConfig{});
    CHECK(r.verdict == Verdict::kRejected);
    CHECK(r.support < r.threshold);
  }
}

TEST_CASE("threshold rule") {
  CHECK(acceptance_threshold(0) == 3);
  CHECK(acceptance_threshold(2) == 3);
  CHECK(acceptance_threshold(3) == 4);
  CHECK(acceptance_threshold(7) == 8);
}

TEST_CASE("ties prefer the wider span and otherwise report ambiguity") {
  const Field f(16);
  const Polynomial a(f, {0x1111, 0x0003});
  const Polynomial b(f, {0x2222, 0x0005});
  RecoveryConfig cfg;
  cfg.spurious_max_expected = 0;

  PointSet interleaved(f);
  for (std::uint64_t i = 0; i < 4; ++i) {
    interleaved.push_back({100 + i, a.eval(100 + i)});
    interleaved.push_back({200 + i, b.eval(200 + i)});
  }
  const RecoveryResult amb = recover(interleaved, cfg);
  CHECK(amb.verdict == Verdict::kAmbiguous);
  REQUIRE(amb.alternatives.size() == 1);
  CHECK((amb.identity.poly() == a || amb.identity.poly() == b));
  CHECK(!(amb.alternatives[0] == amb.identity));

  PointSet spread(f);
  for (std::uint64_t i = 0; i < 4; ++i) spread.push_back({100 + i, a.eval(100 + i)});
  const std::uint64_t filler[] = {0x1234, 0x9abc, 0x4321, 0xfed0};
  for (std::uint64_t i = 0; i < 4; ++i) {
    spread.push_back({200 + i, b.eval(200 + i)});
    spread.push_back({300 + i, filler[i]});
  }
  const RecoveryResult wide = recover(spread, cfg);
  CHECK(wide.accepted());
  CHECK(wide.identity.poly() == b);
}

TEST_CASE("degenerate candidate sets") {
  const Field f(8);
  PointSet vertical(f);
  for (std::uint64_t y = 0; y < 5; ++y) vertical.push_back({7, y});
  CHECK_THROWS_AS(recover(vertical, RecoveryConfig{}), NoLineRecoverableError);
  PointSet one(f);
  one.push_back({1, 1});
  CHECK_THROWS_AS(recover(one, RecoveryConfig{}), LengthError);
}

}  // TEST_SUITE
