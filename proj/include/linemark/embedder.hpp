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

#ifndef LINEMARK_EMBEDDER_HPP_
#define LINEMARK_EMBEDDER_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "linemark/codec.hpp"
#include "linemark/gf2n.hpp"

namespace linemark {

inline constexpr double kInfiniteDelta = std::numeric_limits<double>::infinity();

// Ordered token ids over a vocabulary of `vocab_size` entries.
struct TokenStream {
  std::size_t vocab_size = 0;
  std::vector<TokenId> tokens;

  std::size_t size() const { return tokens.size(); }

  // Throws DomainError if a token is outside the vocabulary.
  void validate() const;

  friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

// Anything that can produce the next token given the text so far. With
// delta == kInfiniteDelta the returned token must be in `bias` whenever
// `bias` is non-empty; with finite delta, members of `bias` get +delta on
// their logits.
class TokenSource {
 public:
  virtual ~TokenSource() = default;
  virtual std::size_t vocab_size() const = 0;
  virtual TokenId next(std::span<const TokenId> context, const TokenSet& bias,
                       double delta) = 0;
};

// Deterministic stand-in for a language model.
//
// At step `context.size()` each token v gets a logit drawn from a
// counter-based generator keyed by (seed, position, v), uniform in
// [0, kLogitSpread). The token is sampled from softmax((logit + bias) / T)
// with its own keyed draw, so the output is a pure function of
// (seed, position, bias, delta).
class MockSource final : public TokenSource {
 public:
  static constexpr double kLogitSpread = 8.0;

  MockSource(std::uint64_t seed, std::size_t vocab_size, double temperature = 1.0);

  std::size_t vocab_size() const override { return vocab_size_; }
  TokenId next(std::span<const TokenId> context, const TokenSet& bias,
               double delta) override;

 private:
  std::uint64_t seed_;
  std::size_t vocab_size_;
  double temperature_;
  std::vector<double> weights_;
};

struct EmbedParams {
  Field field{8};
  std::size_t num_points = 2;  // N
  double delta = kInfiniteDelta;
  SecretKey key;
  std::size_t vocab_size = 32768;

  // n * N + 1.
  std::size_t stream_length() const { return field.bits() * num_points + 1; }
  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Embeds the line of `identity` as N points (x_i, f(x_i)): one unbiased
// seed token, then n tokens per point whose partition bits spell f(x_i),
// where x_i is derived from the token just before the block.
TokenStream embed(const Identity& identity, TokenSource& source,
                  const EmbedParams& params);

// Like embed, with point slot i carrying identities[i mod t].
// Throws CapacityError when t > N.
TokenStream embed_multi(std::span<const Identity> identities, TokenSource& source,
                        const EmbedParams& params);

}  // namespace linemark

#endif  // LINEMARK_EMBEDDER_HPP_
