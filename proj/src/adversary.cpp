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

#include "linemark/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "linemark/error.hpp"
#include "linemark/extractor.hpp"

namespace linemark {
namespace {

std::vector<std::size_t> distinct_positions(Rng& rng, std::size_t length, std::size_t k) {
  std::vector<std::size_t> idx(length);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + rng.uniform(length - i)]);
  }
  idx.resize(k);
  return idx;
}

TokenId random_token(Rng& rng, std::size_t vocab) {
  if (vocab == 0) throw DomainError("attack needs a non-empty vocabulary");
  return static_cast<TokenId>(rng.uniform(vocab));
}

Point random_point(Rng& rng, const Field& field) {
  const std::uint64_t x = rng.next() & field.mask();
  return {x, rng.next() & field.mask()};
}

}  // namespace

AttackKind parse_attack_kind(std::string_view name) {
  if (name == "substitute") return AttackKind::kSubstitute;
  if (name == "delete") return AttackKind::kDelete;
  if (name == "insert") return AttackKind::kInsert;
  if (name == "duplicate-splice") return AttackKind::kDuplicateSplice;
  throw ConfigError("unknown attack '" + std::string(name) +
                    "'; expected substitute, delete, insert or duplicate-splice");
}

std::string_view attack_kind_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::kSubstitute:
      return "substitute";
    case AttackKind::kDelete:
      return "delete";
    case AttackKind::kInsert:
      return "insert";
    case AttackKind::kDuplicateSplice:
      return "duplicate-splice";
  }
  return "substitute";
}

void AttackSpec::validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw ConfigError("attack rate must lie in [0, 1], got " + std::to_string(rate));
  }
}

std::size_t AttackSpec::amount(std::size_t length) const {
  validate();
  std::size_t k = count ? *count
                        : static_cast<std::size_t>(std::llround(rate * static_cast<double>(length)));
  if (kind != AttackKind::kInsert) k = std::min(k, length);
  return k;
}

TokenStream attack(const TokenStream& stream, const AttackSpec& spec) {
  const std::size_t length = stream.size();
  const std::size_t k = spec.amount(length);
  TokenStream out = stream;
  if (k == 0) return out;
  Rng rng(derive_seed(spec.seed, {static_cast<std::uint64_t>(spec.kind)}));
  switch (spec.kind) {
    case AttackKind::kSubstitute:
      for (std::size_t pos : distinct_positions(rng, length, k)) {
        out.tokens[pos] = random_token(rng, stream.vocab_size);
      }
      break;
    case AttackKind::kDelete: {
      std::vector<std::uint8_t> drop(length, 0);
      for (std::size_t pos : distinct_positions(rng, length, k)) drop[pos] = 1;
      out.tokens.clear();
      for (std::size_t i = 0; i < length; ++i) {
        if (!drop[i]) out.tokens.push_back(stream.tokens[i]);
      }
      break;
    }
    case AttackKind::kInsert:
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t pos = rng.uniform(out.tokens.size() + 1);
        out.tokens.insert(out.tokens.begin() + static_cast<std::ptrdiff_t>(pos),
                          random_token(rng, stream.vocab_size));
      }
      break;
    case AttackKind::kDuplicateSplice: {
      const std::size_t start = rng.uniform(length - k + 1);
      const std::vector<TokenId> span(stream.tokens.begin() + static_cast<std::ptrdiff_t>(start),
                                      stream.tokens.begin() +
                                          static_cast<std::ptrdiff_t>(start + k));
      const std::size_t dest = rng.uniform(length + 1);
      out.tokens.insert(out.tokens.begin() + static_cast<std::ptrdiff_t>(dest), span.begin(),
                        span.end());
      break;
    }
  }
  return out;
}

long double fail_term(unsigned n, std::size_t k, std::size_t R) {
  if (k < 2) throw DomainError("fail_term needs k >= 2");
  if (k > R) return 0.0L;
  const long double p = std::ldexp(1.0L, -static_cast<int>(n));
  const long double Rl = static_cast<long double>(R);
  const long double kl = static_cast<long double>(k);
  const long double log_choose =
      std::lgammal(Rl + 1) - std::lgammal(kl + 1) - std::lgammal(Rl - kl + 1);
  return std::exp(log_choose + (kl - 2) * std::log(p) + (Rl - kl) * std::log1p(-p));
}

long double fail_probability(unsigned n, std::size_t F, std::size_t R) {
  if (F <= 2) throw DomainError("fail_probability needs F >= 3, got " + std::to_string(F));
  long double sum = 0.0L;
  for (std::size_t k = F; k <= R; ++k) sum += fail_term(n, k, R);
  return sum;
}

std::size_t ExperimentReport::max() const {
  return max_collinear.empty() ? 0
                               : *std::max_element(max_collinear.begin(), max_collinear.end());
}

double ExperimentReport::median() const {
  if (max_collinear.empty()) return 0.0;
  std::vector<std::size_t> sorted = max_collinear;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  if (sorted.size() % 2) return static_cast<double>(sorted[mid]);
  return (static_cast<double>(sorted[mid - 1]) + static_cast<double>(sorted[mid])) / 2.0;
}

double ExperimentReport::mean() const {
  if (max_collinear.empty()) return 0.0;
  const double total = std::accumulate(max_collinear.begin(), max_collinear.end(), 0.0);
  return total / static_cast<double>(max_collinear.size());
}

ExperimentReport random_point_experiment(const Field& field, std::size_t R,
                                         std::size_t trials, std::uint64_t seed) {
  if (R < 2) throw DomainError("random_point_experiment needs R >= 2");
  ExperimentReport report;
  report.bits = field.bits();
  report.points = R;
  report.trials = trials;
  report.seed = seed;
  report.max_collinear.reserve(trials);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, {trial}));
    PointSet points(field);
    for (std::size_t i = 0; i < R; ++i) points.push_back(random_point(rng, field));
    std::size_t best = 2;
    try {
      best = mcp_hashing(points).support;
    } catch (const NoLineRecoverableError&) {
      // Every point shares one x; the duplicates are all that line up.
      best = 2;
    }
    report.max_collinear.push_back(best);
  }
  return report;
}

std::size_t spurious_max_expected(const Field& field, std::size_t R) {
  if (R < 2) return 0;
  static std::mutex mu;
  static std::map<std::tuple<unsigned, std::uint64_t, std::size_t>, std::size_t> cache;
  const auto key = std::make_tuple(field.bits(), field.modulus_low(), R);
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const std::size_t value =
      random_point_experiment(field, R, kCalibrationTrials,
                              derive_seed(kCalibrationSeed, {field.bits(), R}))
          .max();
  cache.emplace(key, value);
  return value;
}

std::size_t spurious_curve_bound(unsigned n, std::size_t R, std::size_t t) {
  if (t < 1) throw DomainError("curves need t >= 1");
  std::size_t s = t;
  const long double log_p = -static_cast<long double>(n) * std::log(2.0L);
  const long double limit = std::log(static_cast<long double>(kCurveBoundMass));
  while (s + 1 <= R) {
    const long double k = static_cast<long double>(s + 1);
    const long double Rl = static_cast<long double>(R);
    const long double log_expected = std::lgammal(Rl + 1) - std::lgammal(k + 1) -
                                     std::lgammal(Rl - k + 1) +
                                     (k - static_cast<long double>(t)) * log_p;
    if (log_expected < limit) break;
    ++s;
  }
  return s;
}

BudgetRow budget_table(std::size_t tokens, const Field& field) {
  const std::size_t n = field.bits();
  if (tokens < n + 2) {
    throw DomainError("budget needs at least n + 2 = " + std::to_string(n + 2) + " tokens");
  }
  BudgetRow row;
  row.tokens = tokens;
  row.bits = field.bits();
  row.genuine = (tokens - 1) / n;
  if (row.genuine < 2) {
    throw CapacityError(std::to_string(tokens) + " tokens hold fewer than two points in GF(2^" +
                        std::to_string(n) + ")");
  }
  row.total = n * (row.genuine - 1) + 1;
  row.fake = row.total - row.genuine;
  row.needed = spurious_max_expected(field, row.fake) + 1;
  return row;
}

FailureReport failure_validation(unsigned n, std::size_t F, std::size_t R,
                                   std::size_t trials, std::uint64_t seed) {
  const long double analytic = fail_probability(n, F, R);
  const Field field(n);
  if (n < 64 && F > (std::uint64_t{1} << n)) {
    throw DomainError("cannot plant more points than the field has x values");
  }
  FailureReport report;
  report.bits = n;
  report.genuine = F;
  report.random = R;
  report.trials = trials;
  report.seed = seed;
  report.analytic = static_cast<double>(analytic);
  std::size_t failures = 0;
  std::size_t failures_any = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, {trial}));
    const std::uint64_t a0 = rng.next() & field.mask();
    const std::uint64_t a1 = rng.next() & field.mask();
    PointSet points(field);
    std::vector<std::uint64_t> xs;
    while (xs.size() < F) {
      const std::uint64_t x = rng.next() & field.mask();
      if (std::find(xs.begin(), xs.end(), x) != xs.end()) continue;
      xs.push_back(x);
      points.push_back({x, a0 ^ field.mul(a1, x)});
    }
    for (std::size_t i = 0; i < R; ++i) points.push_back(random_point(rng, field));
    bool fail = false;
    bool fail_any = false;
    for (const LineFit& line : lines_with_support(points, F)) {
      if (line.a0 == a0 && line.a1 == a1) continue;
      fail_any = true;
      const auto random_support =
          std::count_if(line.supporting_indices.begin(), line.supporting_indices.end(),
                        [F](std::size_t i) { return i >= F; });
      if (static_cast<std::size_t>(random_support) >= F) fail = true;
    }
    failures += fail;
    failures_any += fail_any;
  }
  const double t = static_cast<double>(std::max<std::size_t>(trials, 1));
  report.empirical = static_cast<double>(failures) / t;
  report.empirical_any = static_cast<double>(failures_any) / t;
  const double p = std::clamp(report.analytic, 0.0, 1.0);
  report.std_error = std::sqrt(p * (1.0 - p) / t);
  const double gap = std::fabs(report.empirical - report.analytic);
  report.breakdown = report.analytic > 1.0 || gap > 3.0 * report.std_error;
  return report;
}

RobustnessReport robustness_experiment(unsigned n, std::size_t tokens, std::size_t kept,
                                       std::size_t runs, std::uint64_t seed) {
  const Field field(n);
  const BudgetRow budget = budget_table(tokens, field);
  if (kept > budget.genuine) {
    throw DomainError("cannot keep " + std::to_string(kept) + " of " +
                      std::to_string(budget.genuine) + " points");
  }
  RobustnessReport report;
  report.bits = n;
  report.tokens = tokens;
  report.genuine = budget.genuine;
  report.kept = kept;
  report.runs = runs;
  report.seed = seed;
  for (std::size_t run = 0; run < runs; ++run) {
    Rng rng(derive_seed(seed, {run}));
    EmbedParams params;
    params.field = field;
    params.num_points = budget.genuine;
    params.key = random_key(rng);
    params.vocab_size = kLabVocab;
    const Identity identity = random_identity(field, 2, rng);
    MockSource source(rng.next(), kLabVocab);
    const TokenStream clean = embed(identity, source, params);

    // Block i spans the x token at n*i and its n bit tokens.
    std::vector<std::uint8_t> keep(clean.size(), 0);
    for (std::size_t block : distinct_positions(rng, budget.genuine, kept)) {
      for (std::size_t pos = n * block; pos <= n * block + n; ++pos) keep[pos] = 1;
    }
    TokenStream attacked = clean;
    for (std::size_t pos = 0; pos < attacked.size(); ++pos) {
      if (!keep[pos]) attacked.tokens[pos] = random_token(rng, kLabVocab);
    }

    const PointSet candidates = build_candidates(attacked, params.key, field);
    const RecoveryResult result = recover(candidates, RecoveryConfig{});
    report.threshold = result.threshold;
    const bool match = result.identity == identity;
    report.top_line_match += match;
    report.recovered += match && result.accepted();
    report.ambiguous += result.verdict == Verdict::kAmbiguous;
  }
  return report;
}

std::vector<ExperimentReport> collinear_sweep(std::size_t trials, std::uint64_t seed) {
  std::vector<ExperimentReport> reports;
  for (std::size_t R : sweep_sizes()) {
    for (unsigned n : sweep_fields()) {
      reports.push_back(random_point_experiment(Field(n), R, trials, derive_seed(seed, {n, R})));
    }
  }
  return reports;
}

std::string render_collinear_table(const std::vector<ExperimentReport>& reports) {
  std::vector<unsigned> fields;
  std::vector<std::size_t> sizes;
  std::map<std::pair<std::size_t, unsigned>, const ExperimentReport*> cells;
  for (const ExperimentReport& r : reports) {
    if (std::find(fields.begin(), fields.end(), r.bits) == fields.end()) fields.push_back(r.bits);
    if (std::find(sizes.begin(), sizes.end(), r.points) == sizes.end()) sizes.push_back(r.points);
    cells[{r.points, r.bits}] = &r;
  }
  std::ostringstream out;
  char buf[64];
  out << "  R     ";
  for (unsigned n : fields) {
    std::snprintf(buf, sizeof buf, " %12s", ("GF(2^" + std::to_string(n) + ")").c_str());
    out << buf;
  }
  out << "\n";
  for (std::size_t R : sizes) {
    std::snprintf(buf, sizeof buf, "  %-6zu", R);
    out << buf;
    for (unsigned n : fields) {
      auto it = cells.find({R, n});
      if (it == cells.end()) {
        std::snprintf(buf, sizeof buf, " %12s", "-");
      } else {
        std::snprintf(buf, sizeof buf, " %7g/%-4zu", it->second->median(), it->second->max());
      }
      out << buf;
    }
    out << "\n";
  }
  out << "  cells: median/max of the maximum collinear count per trial\n";
  return out.str();
}

SecretKey random_key(Rng& rng) {
  std::array<std::uint8_t, SecretKey::kBytes> bytes{};
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    std::uint64_t v = rng.next();
    for (std::size_t b = 0; b < 8; ++b) bytes[i + b] = static_cast<std::uint8_t>(v >> (56 - 8 * b));
  }
  return SecretKey(bytes);
}

Identity random_identity(const Field& field, std::size_t num_coeffs, Rng& rng) {
  std::vector<std::uint64_t> coeffs(num_coeffs);
  for (auto& c : coeffs) c = rng.next() & field.mask();
  return Identity(Polynomial(field, std::move(coeffs)));
}

}  // namespace linemark
