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

#ifndef LINEMARK_EXTRACTOR_HPP_
#define LINEMARK_EXTRACTOR_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "linemark/codec.hpp"
#include "linemark/embedder.hpp"
#include "linemark/geometry.hpp"

namespace linemark {

// Partition bits of tokens 1 .. L-1; the seed token carries none.
Bits extract_bits(const TokenStream& stream, const SecretKey& key);

// One candidate per window: position i gives x = derive_x(token i) and
// y = bits w_{i+1} .. w_{i+n}, so L - n points in total. Throws
// InsufficientTokensError when L < n + 1.
PointSet build_candidates(const TokenStream& stream, const SecretKey& key,
                          const Field& field);

struct RecoveryConfig {
  Solver solver = Solver::kHashing;
  std::size_t num_coeffs = 2;
  std::size_t ransac_trials = 2000;
  std::uint64_t seed = 0;
  // Skips the Monte Carlo lookup when set.
  std::optional<std::size_t> spurious_max_expected;
};

enum class Verdict { kAccepted, kRejected, kAmbiguous };

std::string_view verdict_name(Verdict verdict);
// Throws ParseError on anything but the three names.
Verdict parse_verdict(std::string_view name);

struct RecoveryResult {
  explicit RecoveryResult(Identity id) : identity(std::move(id)) {}

  Identity identity;
  std::size_t support = 0;
  std::size_t total = 0;
  std::size_t spurious_max_expected = 0;
  std::size_t threshold = 0;
  Verdict verdict = Verdict::kRejected;
  std::vector<std::size_t> supporting_indices;
  // Other curves with the winning support when the verdict is ambiguous.
  std::vector<Identity> alternatives;

  bool accepted() const { return verdict == Verdict::kAccepted; }
};

// max(3, spurious + 1).
std::size_t acceptance_threshold(std::size_t spurious_max_expected);

// Runs the configured solver and scores its best curve. Lines are judged
// against spurious_max_expected, longer curves against
// spurious_curve_bound. Among curves of
// equal winning support the one whose supporting positions span further
// wins; a remaining tie is reported as ambiguous.
RecoveryResult recover(const PointSet& candidates, const RecoveryConfig& config);

}  // namespace linemark

#endif  // LINEMARK_EXTRACTOR_HPP_
