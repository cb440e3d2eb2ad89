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

#include "linemark/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "linemark/error.hpp"
#include "linemark/kernels.hpp"
#include "linemark/rng.hpp"

namespace linemark {
namespace {

// Slope -> count for one reference point. Widths up to 16 bits index an
// array directly; wider fields use open addressing. Generation stamps make
// reset() O(1).
class SlopeCounter {
 public:
  SlopeCounter(unsigned bits, std::size_t max_entries) {
    if (bits <= 16) {
      direct_ = true;
      capacity_ = std::size_t{1} << bits;
    } else {
      capacity_ = 16;
      while (capacity_ < 2 * max_entries) capacity_ <<= 1;
      keys_.resize(capacity_);
    }
    counts_.resize(capacity_);
    stamps_.resize(capacity_, 0);
  }

  void reset() {
    if (++generation_ == 0) {
      std::fill(stamps_.begin(), stamps_.end(), 0);
      generation_ = 1;
    }
  }

  std::uint32_t increment(std::uint64_t slope) {
    const std::size_t s = slot(slope);
    if (stamps_[s] != generation_) {
      stamps_[s] = generation_;
      keys_at(s) = slope;
      counts_[s] = 0;
    }
    return ++counts_[s];
  }

  std::uint32_t count(std::uint64_t slope) const {
    const std::size_t s = slot(slope);
    return stamps_[s] == generation_ ? counts_[s] : 0;
  }

  void clear(std::uint64_t slope) {
    const std::size_t s = slot(slope);
    if (stamps_[s] == generation_) counts_[s] = 0;
  }

 private:
  std::size_t slot(std::uint64_t slope) const {
    if (direct_) return static_cast<std::size_t>(slope);
    std::size_t s = static_cast<std::size_t>((slope * 0x9e3779b97f4a7c15ULL) >> 20) &
                    (capacity_ - 1);
    while (stamps_[s] == generation_ && keys_[s] != slope) s = (s + 1) & (capacity_ - 1);
    return s;
  }

  std::uint64_t& keys_at(std::size_t s) {
    static std::uint64_t sink;
    return direct_ ? sink : keys_[s];
  }

  bool direct_ = false;
  std::size_t capacity_ = 0;
  std::uint32_t generation_ = 0;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> stamps_;
};

void require_two_points(const PointSet& points) {
  if (points.size() < 2) {
    throw LengthError("collinearity needs at least 2 points, got " +
                      std::to_string(points.size()));
  }
}

[[noreturn]] void throw_all_vertical() {
  throw NoLineRecoverableError(
      "every pair of candidates shares its x coordinate; no line is recoverable");
}

LineFit make_line(const PointSet& points, std::uint64_t a0, std::uint64_t a1) {
  LineFit fit;
  fit.a0 = a0;
  fit.a1 = a1;
  fit.supporting_indices = points_on(points, fit.poly(points.field()));
  fit.support = fit.supporting_indices.size();
  return fit;
}

// Per-reference slope bucketing shared by the hashing solvers.
class SlopeScan {
 public:
  explicit SlopeScan(const PointSet& points)
      : points_(points),
        kernels_(active_kernels()),
        counter_(points.field().bits(), points.size()),
        slopes_(points.size()) {}

  // Buckets the points after `ref`. Returns the reference's duplicate count.
  std::size_t scan(std::size_t ref) {
    const auto xs = points_.xs();
    const auto ys = points_.ys();
    const std::size_t begin = ref + 1;
    const std::size_t m = points_.size() - begin;
    kernels_.slopes(points_.field().data(), xs[ref], ys[ref], xs.data() + begin,
                    ys.data() + begin, slopes_.data(), m);
    counter_.reset();
    std::size_t dups = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (xs[begin + k] == xs[ref]) {
        dups += ys[begin + k] == ys[ref];
        continue;
      }
      counter_.increment(slopes_[k]);
    }
    return dups;
  }

  // Slope of later point `k` (offset from ref + 1), or nullopt if vertical.
  std::optional<std::uint64_t> slope_at(std::size_t ref, std::size_t k) const {
    if (points_.xs()[ref + 1 + k] == points_.xs()[ref]) return std::nullopt;
    return slopes_[k];
  }

  SlopeCounter& counter() { return counter_; }

 private:
  const PointSet& points_;
  const KernelTable& kernels_;
  SlopeCounter counter_;
  std::vector<std::uint64_t> slopes_;
};

void sample_subset(Rng& rng, std::size_t n, std::size_t t, std::vector<std::size_t>& out) {
  out.clear();
  while (out.size() < t) {
    const std::size_t pick = static_cast<std::size_t>(rng.uniform(n));
    if (std::find(out.begin(), out.end(), pick) == out.end()) out.push_back(pick);
  }
}

bool distinct_x(const PointSet& points, std::span<const std::size_t> idx) {
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (points.xs()[idx[a]] == points.xs()[idx[b]]) return false;
    }
  }
  return true;
}

constexpr std::size_t kRansacRedraws = 64;

// Draws a usable subset for one trial; false when every redraw had a
// repeated x.
bool draw_trial(const PointSet& points, std::size_t t, std::uint64_t seed,
                std::size_t trial, std::vector<std::size_t>& idx) {
  Rng rng(derive_seed(seed, {trial}));
  for (std::size_t attempt = 0; attempt < kRansacRedraws; ++attempt) {
    sample_subset(rng, points.size(), t, idx);
    if (distinct_x(points, idx)) return true;
  }
  return false;
}

Polynomial interpolate_subset(const PointSet& points, std::span<const std::size_t> idx) {
  std::vector<Point> sample;
  sample.reserve(idx.size());
  for (std::size_t i : idx) sample.push_back(points[i]);
  return interpolate(points.field(), sample);
}

std::size_t count_on(const PointSet& points, const Polynomial& poly) {
  return active_kernels().count_on_poly(points.field().data(), poly.coeffs().data(),
                                        poly.size(), points.xs().data(),
                                        points.ys().data(), points.size(), nullptr);
}

// Keeps every distinct curve of the current best support.
class TieTracker {
 public:
  explicit TieTracker(std::vector<PolyFit>* out) : out_(out) {}

  void offer(const Polynomial& poly, std::size_t support, std::size_t best) {
    if (out_ == nullptr || support != best) return;
    const std::vector<std::uint64_t> key(poly.coeffs().begin(), poly.coeffs().end());
    if (!seen_.insert(key).second) return;
    out_->push_back(PolyFit{poly, support, {}});
  }

  void reset() {
    if (out_ == nullptr) return;
    out_->clear();
    seen_.clear();
  }

 private:
  std::vector<PolyFit>* out_;
  std::set<std::vector<std::uint64_t>> seen_;
};

void fill_support(const PointSet& points, PolyFit& fit) {
  fit.supporting_indices = points_on(points, fit.poly);
  fit.support = fit.supporting_indices.size();
}

}  // namespace

PointSet::PointSet(Field field, std::span<const Point> points) : field_(std::move(field)) {
  xs_.reserve(points.size());
  ys_.reserve(points.size());
  for (const Point& p : points) push_back(p);
}

void PointSet::push_back(const Point& p) {
  if (!field_.contains(p.x) || !field_.contains(p.y)) {
    throw DomainError("point outside GF(2^" + std::to_string(field_.bits()) + ")");
  }
  xs_.push_back(p.x);
  ys_.push_back(p.y);
}

Solver parse_solver(std::string_view name) {
  if (name == "bruteforce") return Solver::kBruteForce;
  if (name == "hashing") return Solver::kHashing;
  if (name == "ransac") return Solver::kRansac;
  throw ConfigError("unknown solver '" + std::string(name) +
                    "'; expected bruteforce, hashing or ransac");
}

std::string_view solver_name(Solver solver) {
  switch (solver) {
    case Solver::kBruteForce:
      return "bruteforce";
    case Solver::kHashing:
      return "hashing";
    case Solver::kRansac:
      return "ransac";
  }
  return "hashing";
}

std::vector<std::size_t> points_on(const PointSet& points, const Polynomial& poly) {
  if (!(poly.field() == points.field())) throw FieldMismatchError();
  std::vector<std::uint8_t> hits(points.size());
  active_kernels().count_on_poly(points.field().data(), poly.coeffs().data(), poly.size(),
                                 points.xs().data(), points.ys().data(), points.size(),
                                 hits.data());
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i]) idx.push_back(i);
  }
  return idx;
}

LineFit mcp_bruteforce(const PointSet& points) {
  require_two_points(points);
  const Field& field = points.field();
  const auto& kernels = active_kernels();
  const auto xs = points.xs();
  const auto ys = points.ys();
  bool found = false;
  std::size_t best = 0;
  std::uint64_t best_a0 = 0;
  std::uint64_t best_a1 = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (xs[i] == xs[j]) continue;
      const std::uint64_t a1 = field.div(ys[i] ^ ys[j], xs[i] ^ xs[j]);
      const std::uint64_t a0 = ys[i] ^ field.mul(a1, xs[i]);
      const std::uint64_t coeffs[2] = {a0, a1};
      const std::size_t support = kernels.count_on_poly(field.data(), coeffs, 2, xs.data(),
                                                        ys.data(), points.size(), nullptr);
      if (!found || support > best) {
        found = true;
        best = support;
        best_a0 = a0;
        best_a1 = a1;
      }
    }
  }
  if (!found) throw_all_vertical();
  return make_line(points, best_a0, best_a1);
}

LineFit mcp_hashing(const PointSet& points) {
  require_two_points(points);
  const Field& field = points.field();
  const std::size_t n = points.size();
  SlopeScan scan(points);
  bool found = false;
  std::size_t best = 0;
  std::size_t best_ref = 0;
  std::uint64_t best_slope = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // A line whose first point is i holds at most n - i points.
    if (found && n - i <= best) break;
    const std::size_t dups = scan.scan(i);
    // Largest bucket; among equal buckets the one entered first.
    std::uint32_t top = 0;
    std::uint64_t top_slope = 0;
    for (std::size_t k = 0; k < n - i - 1; ++k) {
      const auto s = scan.slope_at(i, k);
      if (!s) continue;
      const std::uint32_t c = scan.counter().count(*s);
      if (c > top) {
        top = c;
        top_slope = *s;
      }
    }
    if (top == 0) continue;
    const std::size_t support = 1 + dups + top;
    if (!found || support > best) {
      found = true;
      best = support;
      best_ref = i;
      best_slope = top_slope;
    }
  }
  if (!found) throw_all_vertical();
  const Point ref = points[best_ref];
  return make_line(points, ref.y ^ field.mul(best_slope, ref.x), best_slope);
}

std::vector<LineFit> lines_with_support(const PointSet& points, std::size_t min_support) {
  if (min_support < 2) throw DomainError("min_support must be at least 2");
  if (points.size() < 2) return {};
  const Field& field = points.field();
  const std::size_t n = points.size();
  SlopeScan scan(points);

  struct Found {
    std::size_t support;
    std::size_t order;
  };
  std::map<std::pair<std::uint64_t, std::uint64_t>, Found> lines;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (n - i < min_support) break;
    const std::size_t dups = scan.scan(i);
    const Point ref = points[i];
    for (std::size_t k = 0; k < n - i - 1; ++k) {
      const auto s = scan.slope_at(i, k);
      if (!s) continue;
      const std::uint32_t c = scan.counter().count(*s);
      if (c == 0) continue;  // bucket already reported
      scan.counter().clear(*s);
      const std::size_t support = 1 + dups + c;
      if (support < min_support) continue;
      const std::pair<std::uint64_t, std::uint64_t> key{ref.y ^ field.mul(*s, ref.x), *s};
      auto [it, inserted] = lines.emplace(key, Found{support, lines.size()});
      if (!inserted) it->second.support = std::max(it->second.support, support);
    }
  }

  std::vector<std::pair<Found, std::pair<std::uint64_t, std::uint64_t>>> ordered;
  ordered.reserve(lines.size());
  for (const auto& [key, found] : lines) ordered.emplace_back(found, key);
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.first.support != b.first.support) return a.first.support > b.first.support;
    return a.first.order < b.first.order;
  });
  std::vector<LineFit> out;
  out.reserve(ordered.size());
  for (const auto& [found, key] : ordered) out.push_back(make_line(points, key.first, key.second));
  return out;
}

TopLines top_t_lines(const PointSet& points, std::size_t t) {
  if (t == 0) throw DomainError("t must be at least 1");
  TopLines result;
  if (points.size() >= 2) {
    std::vector<LineFit> rich = lines_with_support(points, 3);
    if (rich.size() > t) rich.resize(t);
    result.lines = std::move(rich);
  }
  if (result.lines.size() < t && points.size() >= 2) {
    // Remaining lines carry exactly two points; take them in pair order.
    const Field& field = points.field();
    std::set<std::pair<std::uint64_t, std::uint64_t>> taken;
    for (const LineFit& l : result.lines) taken.emplace(l.a0, l.a1);
    const auto xs = points.xs();
    const auto ys = points.ys();
    for (std::size_t i = 0; i < points.size() && result.lines.size() < t; ++i) {
      for (std::size_t j = i + 1; j < points.size() && result.lines.size() < t; ++j) {
        if (xs[i] == xs[j]) continue;
        const std::uint64_t a1 = field.div(ys[i] ^ ys[j], xs[i] ^ xs[j]);
        const std::uint64_t a0 = ys[i] ^ field.mul(a1, xs[i]);
        if (!taken.emplace(a0, a1).second) continue;
        result.lines.push_back(make_line(points, a0, a1));
      }
    }
  }
  result.incomplete = result.lines.size() < t;
  return result;
}

Bits order_identities(std::span<const Identity> identities) {
  std::vector<std::pair<Digest, const Identity*>> keyed;
  keyed.reserve(identities.size());
  for (const Identity& id : identities) keyed.emplace_back(sha3_256(id.bytes()), &id);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second->hex() < b.second->hex();
  });
  Bits out;
  for (const auto& [digest, id] : keyed) {
    const Bits b = id->bits();
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

PolyFit mcpp_bruteforce(const PointSet& points, std::size_t t, std::vector<PolyFit>* ties) {
  if (t < 2) throw DomainError("curves need t >= 2 points");
  if (points.size() > kMcppBruteForceMaxPoints || t > kMcppBruteForceMaxCoeffs) {
    throw CapacityError("exhaustive curve search is limited to " +
                        std::to_string(kMcppBruteForceMaxPoints) + " points and t <= " +
                        std::to_string(kMcppBruteForceMaxCoeffs) + "; use the ransac solver");
  }
  if (points.size() < t) {
    throw LengthError("need at least " + std::to_string(t) + " points, got " +
                      std::to_string(points.size()));
  }
  const std::size_t n = points.size();
  std::vector<std::size_t> idx(t);
  for (std::size_t k = 0; k < t; ++k) idx[k] = k;
  TieTracker tracker(ties);
  std::optional<PolyFit> best;
  while (true) {
    if (distinct_x(points, idx)) {
      Polynomial poly = interpolate_subset(points, idx);
      const std::size_t support = count_on(points, poly);
      if (!best || support > best->support) {
        tracker.reset();
        best = PolyFit{poly, support, {}};
      }
      tracker.offer(poly, support, best->support);
    }
    // Next combination in lexicographic order.
    std::size_t k = t;
    while (k > 0 && idx[k - 1] == n - t + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t m = k; m < t; ++m) idx[m] = idx[m - 1] + 1;
  }
  if (!best) throw_all_vertical();
  fill_support(points, *best);
  if (ties != nullptr) {
    for (PolyFit& fit : *ties) fill_support(points, fit);
  }
  return *best;
}

PolyFit mcpp_ransac(const PointSet& points, std::size_t t, std::size_t trials,
                    std::uint64_t seed, std::vector<PolyFit>* ties) {
  if (t < 1) throw DomainError("curves need t >= 1 points");
  if (trials == 0) throw DomainError("ransac needs at least one trial");
  if (points.size() < t) {
    throw LengthError("need at least " + std::to_string(t) + " points, got " +
                      std::to_string(points.size()));
  }
  std::vector<std::size_t> idx;
  TieTracker tracker(ties);
  std::optional<PolyFit> best;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    if (!draw_trial(points, t, seed, trial, idx)) continue;
    Polynomial poly = interpolate_subset(points, idx);
    const std::size_t support = count_on(points, poly);
    if (!best || support > best->support) {
      tracker.reset();
      best = PolyFit{poly, support, {}};
    }
    tracker.offer(poly, support, best->support);
  }
  if (!best) return PolyFit{Polynomial::zero(points.field(), t), 0, {}};
  fill_support(points, *best);
  if (ties != nullptr) {
    for (PolyFit& fit : *ties) fill_support(points, fit);
  }
  return *best;
}

std::optional<std::size_t> ransac_first_success(const PointSet& points, std::size_t t,
                                                const Polynomial& target,
                                                std::uint64_t seed,
                                                std::size_t max_trials) {
  if (points.size() < t) throw LengthError("fewer points than t");
  if (!(target.field() == points.field())) throw FieldMismatchError();
  std::vector<std::size_t> idx;
  for (std::size_t trial = 0; trial < max_trials; ++trial) {
    if (!draw_trial(points, t, seed, trial, idx)) continue;
    if (interpolate_subset(points, idx) == target) return trial + 1;
  }
  return std::nullopt;
}

double expected_trials(double ell, double f, unsigned t) {
  if (!(f > 0) || !(f <= ell)) {
    throw DomainError("expected_trials needs 0 < f <= ell");
  }
  return std::pow(ell / f, static_cast<double>(t));
}

}  // namespace linemark
