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

#include "linemark/embedder.hpp"

#include <cmath>
#include <string>

#include "linemark/error.hpp"
#include "linemark/rng.hpp"

namespace linemark {
namespace {

double unit_draw(std::uint64_t key) {
  return static_cast<double>(splitmix64(key) >> 11) * 0x1.0p-53;
}

}  // namespace

void TokenStream::validate() const {
  for (TokenId t : tokens) {
    if (t >= vocab_size) {
      throw DomainError("token " + std::to_string(t) + " outside vocabulary of " +
                        std::to_string(vocab_size));
    }
  }
}

MockSource::MockSource(std::uint64_t seed, std::size_t vocab_size, double temperature)
    : seed_(seed), vocab_size_(vocab_size), temperature_(temperature) {
  if (vocab_size == 0) throw ConfigError("vocab_size must be positive");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ConfigError("temperature must be a positive finite number");
  }
  weights_.resize(vocab_size);
}

TokenId MockSource::next(std::span<const TokenId> context, const TokenSet& bias,
                         double delta) {
  const std::uint64_t step = derive_seed(seed_, {context.size()});
  const bool forced = std::isinf(delta) && delta > 0 && !bias.empty();
  const double boost = forced || !(delta > 0) ? 0.0 : delta;
  // Subtract the largest possible exponent so exp() never overflows.
  const double shift = (kLogitSpread + boost) / temperature_;
  double total = 0.0;
  for (std::size_t v = 0; v < vocab_size_; ++v) {
    const auto id = static_cast<TokenId>(v);
    const bool member = bias.contains(id);
    double w = 0.0;
    if (!forced || member) {
      const double logit = kLogitSpread * unit_draw(step + v);
      w = std::exp((logit + (member ? boost : 0.0)) / temperature_ - shift);
    }
    weights_[v] = w;
    total += w;
  }
  double target = unit_draw(step ^ 0xa0761d6478bd642fULL) * total;
  std::size_t last_positive = 0;
  for (std::size_t v = 0; v < vocab_size_; ++v) {
    if (weights_[v] <= 0.0) continue;
    last_positive = v;
    target -= weights_[v];
    if (target < 0.0) return static_cast<TokenId>(v);
  }
  return static_cast<TokenId>(last_positive);
}

void EmbedParams::validate() const {
  if (num_points < 2) {
    throw ConfigError("num_points (N) must be at least 2, got " +
                      std::to_string(num_points));
  }
  if (vocab_size < 2) throw ConfigError("vocab_size must be at least 2");
  if (std::isnan(delta) || delta < 0) {
    throw ConfigError("delta must be a non-negative number or infinity");
  }
}

TokenStream embed(const Identity& identity, TokenSource& source,
                  const EmbedParams& params) {
  return embed_multi(std::span<const Identity>(&identity, 1), source, params);
}

TokenStream embed_multi(std::span<const Identity> identities, TokenSource& source,
                        const EmbedParams& params) {
  params.validate();
  if (identities.empty()) throw ConfigError("at least one identity is required");
  if (identities.size() > params.num_points) {
    throw CapacityError(std::to_string(identities.size()) + " lines need at least as many "
                        "point slots, but N = " + std::to_string(params.num_points));
  }
  for (const Identity& id : identities) {
    if (!(id.field() == params.field)) throw FieldMismatchError();
  }
  if (source.vocab_size() != params.vocab_size) {
    throw ConfigError("token source vocabulary (" + std::to_string(source.vocab_size()) +
                      ") differs from vocab_size (" + std::to_string(params.vocab_size) + ")");
  }

  const auto partition = vocab_partition(params.key, params.vocab_size);
  const Field& field = params.field;
  const unsigned n = field.bits();

  TokenStream stream;
  stream.vocab_size = params.vocab_size;
  stream.tokens.reserve(params.stream_length());
  stream.tokens.push_back(source.next(stream.tokens, TokenSet{}, 0.0));

  for (std::size_t slot = 0; slot < params.num_points; ++slot) {
    const Polynomial& f = identities[slot % identities.size()].poly();
    const std::uint64_t x = derive_x(stream.tokens.back(), params.key, field);
    const std::uint64_t y = f.eval(x);
    for (unsigned j = 0; j < n; ++j) {
      const bool bit = (y >> (n - 1 - j)) & 1u;
      const TokenId tok = source.next(stream.tokens, partition->side(bit), params.delta);
      if (tok >= params.vocab_size) {
        throw DomainError("token source returned id " + std::to_string(tok) +
                          " outside the vocabulary");
      }
      stream.tokens.push_back(tok);
    }
  }
  return stream;
}

}  // namespace linemark
