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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance               run everything
//   acceptance --only NAME   run one criterion
//   acceptance --list        print the criterion names

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "linemark/adversary.hpp"
#include "linemark/embedder.hpp"
#include "linemark/error.hpp"
#include "linemark/extractor.hpp"
#include "linemark/geometry.hpp"
#include "linemark/kernels.hpp"
#include "linemark/rng.hpp"

using namespace linemark;

namespace {

// Pinned tolerances and sizes.
constexpr std::size_t kRoundTripRuns = 100;
constexpr std::size_t kRoundTripPoints = 16;
constexpr double kRoundTripSeconds = 10.0;

constexpr std::size_t kCollinearTrials = 100;
constexpr double kCollinearSeconds = 600.0;
constexpr double kDenseMedianFloor = 10.0;
constexpr std::size_t kDenseMaxFloor = 14;

constexpr double kExampleTerm = 0.37;
constexpr double kExampleTermTol = 0.01;
constexpr double kExampleSuccess = 0.99;
constexpr double kExampleSuccessTol = 0.005;

constexpr std::size_t kFailureTrials = 10000;
constexpr double kFailureSigmas = 3.0;

constexpr std::size_t kRobustnessRuns = 500;
constexpr double kRobustnessRate = 0.99;

constexpr std::size_t kEquivalenceInstances = 500;
constexpr std::size_t kEquivalenceMaxPoints = 200;
constexpr std::size_t kCurveInstances = 100;
constexpr std::size_t kCurveMaxPoints = 30;

constexpr std::size_t kFirstHitRuns = 2000;
constexpr double kFirstHitTarget = 625.0;
constexpr double kFirstHitTol = 0.15;

constexpr std::size_t kFalsePositiveRuns = 1000;
constexpr std::size_t kFalsePositiveTokens = 700;
constexpr double kFalsePositiveRejectRate = 0.99;

constexpr std::size_t kMultiLineRuns = 100;

constexpr std::size_t kLabVocabSize = 1024;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::uint64_t draw(Rng& rng, const Field& f) { return rng.next() & f.mask(); }

struct Embedded {
  EmbedParams params;
  std::vector<Identity> identities;
  TokenStream stream;
};

Embedded embed_random(unsigned n, std::size_t N, std::size_t lines, std::uint64_t seed) {
  Rng rng(seed);
  Embedded e;
  e.params.field = Field(n);
  e.params.num_points = N;
  e.params.key = random_key(rng);
  e.params.vocab_size = kLabVocabSize;
  for (std::size_t i = 0; i < lines; ++i) e.identities.push_back(random_identity(e.params.field, 2, rng));
  MockSource source(rng.next(), kLabVocabSize);
  e.stream = embed_multi(e.identities, source, e.params);
  return e;
}

Outcome round_trip() {
  const auto start = Clock::now();
  std::size_t ok = 0, total = 0;
  std::size_t min_support = ~std::size_t{0};
  Outcome out;
  for (unsigned n : {6u, 8u, 12u, 16u, 32u}) {
    std::size_t ok_n = 0;
    for (std::size_t run = 0; run < kRoundTripRuns; ++run) {
      const Embedded e = embed_random(n, kRoundTripPoints, 1, derive_seed(0xa11ce, {n, run}));
      const PointSet pts = build_candidates(e.stream, e.params.key, e.params.field);
      const RecoveryResult r = recover(pts, RecoveryConfig{});
      min_support = std::min(min_support, r.support);
      const bool good = r.identity == e.identities[0] && r.support >= kRoundTripPoints;
      ok_n += good;
      ++total;
    }
    ok += ok_n;
    out.notes.push_back(fmt("GF(2^%u): %zu/%zu", n, ok_n, kRoundTripRuns));
  }
  const double secs = seconds_since(start);
  out.pass = ok == total && secs < kRoundTripSeconds;
  out.detail = fmt("%zu/%zu recovered with support >= %zu (min support %zu), %.2f s (limit %.0f s)",
                   ok, total, kRoundTripPoints, min_support, secs, kRoundTripSeconds);
  return out;
}

// Sparse cells whose median must be exactly 2.
bool median_two_cell(unsigned n, std::size_t R) {
  switch (n) {
    case 8:
      return R <= 8;
    case 12:
      return R <= 32;
    case 16:
    case 32:
      return true;
    default:
      return false;
  }
}

Outcome random_collinear() {
  const auto start = Clock::now();
  const std::vector<ExperimentReport> reports = collinear_sweep(kCollinearTrials, 0x7ab1e3);
  const double secs = seconds_since(start);
  Outcome out;
  std::size_t checked = 0, failed = 0;
  bool dense_ok = false;
  for (const ExperimentReport& r : reports) {
    if (median_two_cell(r.bits, r.points)) {
      ++checked;
      if (r.median() != 2.0) {
        ++failed;
        out.notes.push_back(fmt("GF(2^%u) R=%zu: median %g, expected 2 (max %zu)", r.bits,
                                r.points, r.median(), r.max()));
      }
    }
    if (r.bits == 6 && r.points == 1024) {
      dense_ok = r.median() >= kDenseMedianFloor && r.max() >= kDenseMaxFloor;
      out.notes.push_back(fmt("GF(2^6) R=1024: median %g (floor %g), max %zu (floor %zu)",
                              r.median(), kDenseMedianFloor, r.max(), kDenseMaxFloor));
    }
  }
  std::istringstream table(render_collinear_table(reports));
  for (std::string line; std::getline(table, line);) out.notes.push_back(line);
  out.pass = failed == 0 && dense_ok && secs < kCollinearSeconds;
  out.detail = fmt("%zu/%zu median-2 cells hold, dense cell %s, %.1f s (limit %.0f s)",
                   checked - failed, checked, dense_ok ? "ok" : "out of band", secs,
                   kCollinearSeconds);
  return out;
}

Outcome failure_closed_form() {
  const double term = static_cast<double>(fail_term(6, 4, 16));
  const double success = 1.0 - static_cast<double>(fail_probability(6, 5, 15));
  Outcome out;
  out.pass = std::fabs(term - kExampleTerm) <= kExampleTermTol &&
             std::fabs(success - kExampleSuccess) <= kExampleSuccessTol;
  out.detail = fmt("k=4 term %.4f (want %.2f +- %.3f), success F=5 R=15 %.5f (want %.2f +- %.3f)",
                   term, kExampleTerm, kExampleTermTol, success, kExampleSuccess,
                   kExampleSuccessTol);
  return out;
}

Outcome failure_monte_carlo() {
  const FailureReport r = failure_validation(12, 4, 64, kFailureTrials, 0x7e01);
  Outcome out;
  const double gap = std::fabs(r.empirical - r.analytic);
  out.pass = gap <= kFailureSigmas * r.std_error;
  out.detail = fmt("analytic %.5f, empirical %.5f, |gap| %.5f <= %.0f x SE %.5f", r.analytic,
                   r.empirical, gap, kFailureSigmas, r.std_error);
  out.notes.push_back(fmt("lines through planted points included: %.5f", r.empirical_any));
  return out;
}

Outcome robustness() {
  const RobustnessReport r = robustness_experiment(16, 700, 3, kRobustnessRuns, 0x0b05);
  Outcome out;
  out.pass = r.rate() >= kRobustnessRate;
  out.detail = fmt("%zu/%zu recovered (need %.0f%%), N=%zu, threshold %zu", r.recovered, r.runs,
                   100 * kRobustnessRate, r.genuine, r.threshold);
  out.notes.push_back(fmt("best line was the identity in %zu runs, ambiguous in %zu",
                          r.top_line_match, r.ambiguous));
  out.notes.push_back(fmt("%zu intact points against an acceptance threshold of %zu", r.kept,
                          r.threshold));
  return out;
}

Outcome solver_equivalence() {
  Outcome out;
  std::size_t mismatches = 0, instances = 0;
  for (unsigned n : {6u, 8u, 12u, 16u, 32u, 64u}) {
    const Field f(n);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < kEquivalenceInstances; ++i) {
      Rng rng(derive_seed(0x5017e, {n, i}));
      const std::size_t N = 2 + rng.uniform(kEquivalenceMaxPoints - 1);
      PointSet pts(f);
      const Polynomial line(f, {draw(rng, f), draw(rng, f)});
      const std::size_t planted = i % 2 ? rng.uniform(N / 2 + 1) : 0;
      for (std::size_t k = 0; k < N; ++k) {
        const std::uint64_t x = draw(rng, f);
        pts.push_back({x, k < planted ? line.eval(x) : draw(rng, f)});
      }
      ++instances;
      std::size_t h = 0, b = 0;
      try {
        h = mcp_hashing(pts).support;
      } catch (const NoLineRecoverableError&) {
      }
      try {
        b = mcp_bruteforce(pts).support;
      } catch (const NoLineRecoverableError&) {
      }
      bad += h != b;
    }
    mismatches += bad;
    if (bad) out.notes.push_back(fmt("GF(2^%u): %zu mismatches", n, bad));
  }

  std::size_t curve_bad = 0;
  for (std::size_t i = 0; i < kCurveInstances; ++i) {
    Rng rng(derive_seed(0xc0e7e, {i}));
    const unsigned widths[] = {6, 8, 16};
    const Field f(widths[i % 3]);
    const std::size_t N = 3 + rng.uniform(kCurveMaxPoints - 2);
    const Polynomial curve(f, {draw(rng, f), draw(rng, f), draw(rng, f)});
    const std::size_t planted = rng.uniform(N / 2 + 1);
    PointSet pts(f);
    for (std::size_t k = 0; k < N; ++k) {
      const std::uint64_t x = draw(rng, f);
      pts.push_back({x, k < planted ? curve.eval(x) : draw(rng, f)});
    }
    std::size_t exact = 0, sampled = 0;
    try {
      exact = mcpp_bruteforce(pts, 3).support;
    } catch (const NoLineRecoverableError&) {
    }
    // Ten times the number of 3-subsets.
    const std::size_t trials = 10 * (N * (N - 1) * (N - 2) / 6);
    sampled = mcpp_ransac(pts, 3, trials, i).support;
    curve_bad += exact != sampled;
  }
  if (curve_bad) out.notes.push_back(fmt("curves: %zu mismatches", curve_bad));
  out.pass = mismatches == 0 && curve_bad == 0;
  out.detail = fmt("lines %zu/%zu identical, curves %zu/%zu identical (backend %s)",
                   instances - mismatches, instances, kCurveInstances - curve_bad,
                   kCurveInstances, active_kernels().name);
  return out;
}

Outcome ransac_first_hit() {
  const Field f(16);
  constexpr std::size_t kEll = 1000, kGenuine = 200;
  constexpr std::size_t kMaxTrials = 200000;
  double sum = 0.0;
  std::size_t censored = 0;
  for (std::size_t run = 0; run < kFirstHitRuns; ++run) {
    Rng rng(derive_seed(0x7e02, {run}));
    const Polynomial target(f, {draw(rng, f), draw(rng, f), draw(rng, f), draw(rng, f)});
    PointSet pts(f);
    std::vector<std::uint64_t> used;
    while (pts.size() < kGenuine) {
      const std::uint64_t x = draw(rng, f);
      if (std::find(used.begin(), used.end(), x) != used.end()) continue;
      used.push_back(x);
      pts.push_back({x, target.eval(x)});
    }
    while (pts.size() < kEll) pts.push_back({draw(rng, f), draw(rng, f)});
    const auto first = ransac_first_success(pts, 4, target, rng.next(), kMaxTrials);
    if (!first) {
      ++censored;
      sum += kMaxTrials;
    } else {
      sum += static_cast<double>(*first);
    }
  }
  const double mean = sum / kFirstHitRuns;
  Outcome out;
  const double rel = std::fabs(mean - kFirstHitTarget) / kFirstHitTarget;
  out.pass = rel <= kFirstHitTol && censored == 0;
  out.detail = fmt("mean first success %.1f over %zu runs, %.1f%% from %.0f (limit %.0f%%)", mean,
                   kFirstHitRuns, 100 * rel, kFirstHitTarget, 100 * kFirstHitTol);
  out.notes.push_back(fmt("expected_trials(1000, 200, 4) = %.1f", expected_trials(1000, 200, 4)));
  return out;
}

Outcome false_positives() {
  Outcome out;
  bool pass = true;
  std::vector<std::string> parts;
  for (unsigned n : {16u, 32u}) {
    std::size_t rejected = 0;
    for (std::size_t run = 0; run < kFalsePositiveRuns; ++run) {
      Rng rng(derive_seed(0xfa15e, {n, run}));
      const SecretKey key = random_key(rng);
      TokenStream s{32768, {}};
      for (std::size_t i = 0; i < kFalsePositiveTokens; ++i) {
        s.tokens.push_back(static_cast<TokenId>(rng.uniform(32768)));
      }
      const RecoveryResult r = recover(build_candidates(s, key, Field(n)), RecoveryConfig{});
      rejected += r.verdict == Verdict::kRejected;
    }
    const double rate = static_cast<double>(rejected) / kFalsePositiveRuns;
    pass &= rate >= kFalsePositiveRejectRate;
    parts.push_back(fmt("GF(2^%u) %zu/%zu rejected", n, rejected, kFalsePositiveRuns));
  }
  out.pass = pass;
  out.detail = parts[0] + ", " + parts[1] + fmt(" (need %.0f%%)", 100 * kFalsePositiveRejectRate);
  return out;
}

Outcome multi_line() {
  std::size_t ok = 0;
  for (std::size_t run = 0; run < kMultiLineRuns; ++run) {
    const Embedded e = embed_random(16, 16, 2, derive_seed(0x2713e, {run}));
    const PointSet pts = build_candidates(e.stream, e.params.key, e.params.field);
    const TopLines top = top_t_lines(pts, 2);
    std::vector<Identity> found;
    for (const LineFit& l : top.lines) found.emplace_back(l.poly(e.params.field));
    const bool both =
        !top.incomplete && found.size() == 2 &&
        std::is_permutation(found.begin(), found.end(), e.identities.begin(), e.identities.end());
    std::vector<Identity> swapped = found;
    if (swapped.size() == 2) std::swap(swapped[0], swapped[1]);
    const bool invariant = order_identities(found) == order_identities(swapped) &&
                           order_identities(found) == order_identities(e.identities);
    ok += both && invariant;
  }
  Outcome out;
  out.pass = ok == kMultiLineRuns;
  out.detail = fmt("%zu/%zu runs recovered both lines with order-invariant output", ok,
                   kMultiLineRuns);
  return out;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"round_trip", round_trip},
      {"random_collinear", random_collinear},
      {"failure_closed_form", failure_closed_form},
      {"failure_monte_carlo", failure_monte_carlo},
      {"robustness", robustness},
      {"solver_equivalence", solver_equivalence},
      {"ransac_first_hit", ransac_first_hit},
      {"false_positives", false_positives},
      {"multi_line", multi_line},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--list") == 0) {
      for (const Criterion& c : criteria()) std::printf("%s\n", c.name);
      return 0;
    }
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--list] [--only NAME]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  bool matched = false;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && only != c.name) continue;
    matched = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    for (const std::string& note : o.notes) std::printf("     %s\n", note.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
