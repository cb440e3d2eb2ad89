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

#ifndef LINEMARK_ADVERSARY_HPP_
#define LINEMARK_ADVERSARY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linemark/codec.hpp"
#include "linemark/embedder.hpp"
#include "linemark/geometry.hpp"
#include "linemark/rng.hpp"

namespace linemark {

enum class AttackKind { kSubstitute, kDelete, kInsert, kDuplicateSplice };

// "substitute" | "delete" | "insert" | "duplicate-splice".
AttackKind parse_attack_kind(std::string_view name);
std::string_view attack_kind_name(AttackKind kind);

struct AttackSpec {
  AttackKind kind = AttackKind::kSubstitute;
  // Fraction of the stream in [0, 1]; ignored when count is set.
  double rate = 0.0;
  std::optional<std::size_t> count;
  std::uint64_t seed = 0;

  // Number of tokens touched for a stream of `length` tokens.
  std::size_t amount(std::size_t length) const;
  // Throws ConfigError for a rate outside [0, 1].
  void validate() const;
};

// Substitute: distinct positions get uniform random ids. Delete: distinct
// positions are removed. Insert: random ids at random positions.
// Duplicate-splice: a random span of `amount` tokens is copied to a random
// position. Deterministic in spec.seed.
TokenStream attack(const TokenStream& stream, const AttackSpec& spec);

// One term of the failure sum: C(R, k) p^(k-2) (1-p)^(R-k), p = 2^-n.
long double fail_term(unsigned n, std::size_t k, std::size_t R);
// Sum of fail_term over k = F .. R. Throws DomainError for F <= 2.
long double fail_probability(unsigned n, std::size_t F, std::size_t R);

struct ExperimentReport {
  unsigned bits = 0;
  std::size_t points = 0;  // R
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> max_collinear;  // one per trial

  std::size_t max() const;
  double median() const;
  double mean() const;
};

// Per trial: R uniform points (with replacement) and their maximum
// collinear count. Throws DomainError for R < 2.
ExperimentReport random_point_experiment(const Field& field, std::size_t R,
                                         std::size_t trials, std::uint64_t seed);

inline constexpr std::size_t kCalibrationTrials = 200;
inline constexpr std::uint64_t kCalibrationSeed = 0x6c696e656d61726bULL;

// Largest maximum-collinear count over kCalibrationTrials random sets of R
// points. Memoized per (field, R).
std::size_t spurious_max_expected(const Field& field, std::size_t R);

// Chance support for curves with t coefficients: the largest s whose
// expected number of s-point curves among R uniform points,
// C(R, s) 2^(-n (s - t)), is still at least kCurveBoundMass. Never below t.
inline constexpr double kCurveBoundMass = 0.01;
std::size_t spurious_curve_bound(unsigned n, std::size_t R, std::size_t t);

struct BudgetRow {
  std::size_t tokens = 0;
  unsigned bits = 0;
  std::size_t genuine = 0;  // N
  std::size_t total = 0;    // n(N-1)+1
  std::size_t fake = 0;
  std::size_t needed = 0;
};

// Throws DomainError when T < n + 2, CapacityError when fewer than two
// points fit.
BudgetRow budget_table(std::size_t tokens, const Field& field);

struct FailureReport {
  unsigned bits = 0;
  std::size_t genuine = 0;  // F
  std::size_t random = 0;   // R
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double analytic = 0.0;
  // Trials where a line other than the planted one holds >= F random points.
  double empirical = 0.0;
  double std_error = 0.0;
  // Trials where any other line, planted points included, reaches F.
  double empirical_any = 0.0;
  // Empirical and analytic disagree by more than three standard errors, or
  // the closed form leaves [0, 1].
  bool breakdown = false;
};

FailureReport failure_validation(unsigned n, std::size_t F, std::size_t R,
                                   std::size_t trials, std::uint64_t seed);

struct RobustnessReport {
  unsigned bits = 0;
  std::size_t tokens = 0;
  std::size_t genuine = 0;  // N
  std::size_t kept = 0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::size_t recovered = 0;       // accepted with the embedded identity
  std::size_t top_line_match = 0;  // best line equals the identity, any verdict
  std::size_t ambiguous = 0;
  std::size_t threshold = 0;

  double rate() const { return runs ? static_cast<double>(recovered) / runs : 0.0; }
};

inline constexpr std::size_t kLabVocab = 1024;

// Embeds a random identity in a T-token budget, then substitutes every token
// outside `kept` surviving blocks and tries to recover.
RobustnessReport robustness_experiment(unsigned n, std::size_t tokens, std::size_t kept,
                                       std::size_t runs, std::uint64_t seed);

inline const std::vector<unsigned>& sweep_fields() {
  static const std::vector<unsigned> fields{6, 8, 12, 16, 32};
  return fields;
}
inline const std::vector<std::size_t>& sweep_sizes() {
  static const std::vector<std::size_t> sizes{8, 16, 32, 64, 128, 256, 512, 1024};
  return sizes;
}

// One report per (size, field), sizes outer.
std::vector<ExperimentReport> collinear_sweep(std::size_t trials, std::uint64_t seed);

// Rows per R, one median column per field.
std::string render_collinear_table(const std::vector<ExperimentReport>& reports);

SecretKey random_key(Rng& rng);
Identity random_identity(const Field& field, std::size_t num_coeffs, Rng& rng);

}  // namespace linemark

#endif  // LINEMARK_ADVERSARY_HPP_
