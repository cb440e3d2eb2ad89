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

#include "linemark/extractor.hpp"

#include <algorithm>
#include <string>

#include "linemark/adversary.hpp"
#include "linemark/error.hpp"

namespace linemark {
namespace {

struct Candidate {
  Polynomial poly;
  std::vector<std::size_t> supporting_indices;
};

std::size_t span_of(const std::vector<std::size_t>& idx) {
  if (idx.empty()) return 0;
  const auto [lo, hi] = std::minmax_element(idx.begin(), idx.end());
  return *hi - *lo;
}

// Best curve first, then every other curve of the same support.
std::vector<Candidate> solve(const PointSet& points, const RecoveryConfig& config,
                             std::size_t threshold) {
  std::vector<Candidate> out;
  const Field& field = points.field();
  if (config.num_coeffs == 2 && config.solver == Solver::kHashing) {
    std::vector<LineFit> rich = lines_with_support(points, threshold);
    if (rich.empty()) {
      const LineFit best = mcp_hashing(points);
      out.push_back({best.poly(field), best.supporting_indices});
      return out;
    }
    // Equal supports come out in the same order mcp_hashing picks from.
    const std::size_t top = rich.front().support;
    for (LineFit& line : rich) {
      if (line.support != top) break;
      out.push_back({line.poly(field), std::move(line.supporting_indices)});
    }
    return out;
  }
  if (config.num_coeffs == 2 && config.solver == Solver::kBruteForce) {
    const LineFit best = mcp_bruteforce(points);
    out.push_back({best.poly(field), best.supporting_indices});
    if (best.support >= threshold) {
      for (LineFit& line : lines_with_support(points, best.support)) {
        if (line.support != best.support) continue;
        if (line.a0 == best.a0 && line.a1 == best.a1) continue;
        out.push_back({line.poly(field), std::move(line.supporting_indices)});
      }
    }
    return out;
  }
  if (config.solver == Solver::kHashing) {
    throw ConfigError("solver 'hashing' recovers lines only; use ransac or bruteforce for "
                      "num_coeffs " + std::to_string(config.num_coeffs));
  }
  std::vector<PolyFit> ties;
  const PolyFit best =
      config.solver == Solver::kBruteForce
          ? mcpp_bruteforce(points, config.num_coeffs, &ties)
          : mcpp_ransac(points, config.num_coeffs, config.ransac_trials, config.seed, &ties);
  out.push_back({best.poly, best.supporting_indices});
  for (PolyFit& fit : ties) {
    if (fit.poly == best.poly) continue;
    out.push_back({fit.poly, std::move(fit.supporting_indices)});
  }
  return out;
}

}  // namespace

Bits extract_bits(const TokenStream& stream, const SecretKey& key) {
  stream.validate();
  Bits bits;
  if (stream.size() < 2) return bits;
  bits.reserve(stream.size() - 1);
  for (std::size_t j = 1; j < stream.size(); ++j) {
    bits.push_back(partition_bit(stream.tokens[j], key) ? 1 : 0);
  }
  return bits;
}

PointSet build_candidates(const TokenStream& stream, const SecretKey& key,
                          const Field& field) {
  const std::size_t n = field.bits();
  if (stream.size() < n + 1) {
    throw InsufficientTokensError("a candidate needs " + std::to_string(n + 1) +
                                  " tokens, stream has " + std::to_string(stream.size()));
  }
  const Bits bits = extract_bits(stream, key);
  PointSet points(field);
  const std::size_t count = stream.size() - n;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t x = derive_x(stream.tokens[i], key, field);
    const std::uint64_t y =
        bits_value(field, std::span<const std::uint8_t>(bits).subspan(i, n));
    points.push_back({x, y});
  }
  return points;
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kAccepted:
      return "accepted";
    case Verdict::kRejected:
      return "rejected";
    case Verdict::kAmbiguous:
      return "ambiguous";
  }
  return "rejected";
}

Verdict parse_verdict(std::string_view name) {
  if (name == "accepted") return Verdict::kAccepted;
  if (name == "rejected") return Verdict::kRejected;
  if (name == "ambiguous") return Verdict::kAmbiguous;
  throw ParseError("unknown verdict '" + std::string(name) + "'");
}

std::size_t acceptance_threshold(std::size_t spurious_max_expected) {
  return std::max<std::size_t>(3, spurious_max_expected + 1);
}

RecoveryResult recover(const PointSet& candidates, const RecoveryConfig& config) {
  if (config.num_coeffs < 2) throw ConfigError("num_coeffs must be at least 2");
  if (candidates.size() < 2) {
    throw LengthError("recovery needs at least 2 candidates, got " +
                      std::to_string(candidates.size()));
  }
  const std::size_t spurious =
      config.spurious_max_expected
          ? *config.spurious_max_expected
          : config.num_coeffs == 2
                ? spurious_max_expected(candidates.field(), candidates.size())
                : spurious_curve_bound(candidates.field().bits(), candidates.size(),
                                       config.num_coeffs);
  const std::size_t threshold = acceptance_threshold(spurious);

  std::vector<Candidate> found = solve(candidates, config, threshold);
  // Widest span first; stable so the solver's own order breaks exact ties.
  std::stable_sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return span_of(a.supporting_indices) > span_of(b.supporting_indices);
  });

  RecoveryResult result(Identity(found.front().poly));
  result.supporting_indices = found.front().supporting_indices;
  result.support = result.supporting_indices.size();
  result.total = candidates.size();
  result.spurious_max_expected = spurious;
  result.threshold = threshold;
  if (result.support < threshold) {
    result.verdict = Verdict::kRejected;
  } else if (found.size() > 1 &&
             span_of(found[1].supporting_indices) == span_of(found[0].supporting_indices)) {
    result.verdict = Verdict::kAmbiguous;
    const std::size_t span = span_of(found[0].supporting_indices);
    for (std::size_t k = 1; k < found.size(); ++k) {
      if (span_of(found[k].supporting_indices) != span) break;
      result.alternatives.emplace_back(found[k].poly);
    }
  } else {
    result.verdict = Verdict::kAccepted;
  }
  return result;
}

}  // namespace linemark
