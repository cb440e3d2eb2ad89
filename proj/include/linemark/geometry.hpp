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

#ifndef LINEMARK_GEOMETRY_HPP_
#define LINEMARK_GEOMETRY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linemark/codec.hpp"
#include "linemark/gf2n.hpp"
#include "linemark/poly.hpp"

namespace linemark {

// Candidate points in struct-of-arrays form, the layout the kernels read.
class PointSet {
 public:
  explicit PointSet(Field field) : field_(std::move(field)) {}
  PointSet(Field field, std::span<const Point> points);

  const Field& field() const { return field_; }
  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }

  // Throws DomainError if a coordinate is outside the field.
  void push_back(const Point& p);
  Point operator[](std::size_t i) const { return {xs_[i], ys_[i]}; }

  std::span<const std::uint64_t> xs() const { return xs_; }
  std::span<const std::uint64_t> ys() const { return ys_; }

  // Test metadata: positions of points known to be genuine. Never read by
  // any solver.
  std::vector<std::size_t> genuine_hint;

 private:
  Field field_;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> ys_;
};

// y = a0 + a1 * x and the points on it.
struct LineFit {
  std::uint64_t a0 = 0;
  std::uint64_t a1 = 0;
  std::size_t support = 0;
  std::vector<std::size_t> supporting_indices;

  Polynomial poly(const Field& field) const { return {field, {a0, a1}}; }
};

// Curve of degree <= t - 1 and the points on it.
struct PolyFit {
  Polynomial poly;
  std::size_t support = 0;
  std::vector<std::size_t> supporting_indices;
};

enum class Solver { kBruteForce, kHashing, kRansac };

// "bruteforce" | "hashing" | "ransac"; throws ConfigError otherwise.
Solver parse_solver(std::string_view name);
std::string_view solver_name(Solver solver);

// Indices of the points on `poly`.
std::vector<std::size_t> points_on(const PointSet& points, const Polynomial& poly);

// Maximum-support line by enumerating every pair with distinct x and
// counting the points on its line. O(N^3); the reference for mcp_hashing.
// Among equal-support lines returns the one whose lexicographically first
// defining pair comes first. Throws LengthError for fewer than 2 points,
// NoLineRecoverableError when every pair shares its x.
LineFit mcp_bruteforce(const PointSet& points);

// Same result as mcp_bruteforce in O(N^2): each point in turn is the
// reference, the later points are bucketed by their field slope to it, and
// the largest bucket plus the reference (and its duplicates) is that
// reference's best line. Pairs sharing x are vertical and skipped.
LineFit mcp_hashing(const PointSet& points);

// Every distinct line carrying at least `min_support` points, by
// descending support. Equal support keeps the order of each line's
// lexicographically first defining pair. min_support >= 2.
std::vector<LineFit> lines_with_support(const PointSet& points,
                                        std::size_t min_support);

struct TopLines {
  std::vector<LineFit> lines;
  // Set when fewer than the requested number of lines exist.
  bool incomplete = false;
};

// The t best distinct lines; a point may support several of them.
TopLines top_t_lines(const PointSet& points, std::size_t t);

// Sorts identities by SHA3-256 of their bytes and concatenates their bits.
Bits order_identities(std::span<const Identity> identities);

inline constexpr std::size_t kMcppBruteForceMaxPoints = 40;
inline constexpr std::size_t kMcppBruteForceMaxCoeffs = 4;

// Maximum-support curve through `t` points by trying every t-subset with
// distinct x. Refuses (CapacityError) beyond 40 points or t > 4.
// When `ties` is non-null it receives every distinct curve of maximal support.
PolyFit mcpp_bruteforce(const PointSet& points, std::size_t t,
                        std::vector<PolyFit>* ties = nullptr);

// Random sampling + verification. Trial k draws t distinct points from
// its own stream derive_seed(seed, {k}); subsets with a repeated x are
// redrawn and not counted. Zero support when no trial found a usable subset.
PolyFit mcpp_ransac(const PointSet& points, std::size_t t, std::size_t trials,
                    std::uint64_t seed, std::vector<PolyFit>* ties = nullptr);

// 1-based index of the first RANSAC trial whose sample interpolates
// `target`, or nullopt within max_trials. Uses the same sampling as
// mcpp_ransac.
std::optional<std::size_t> ransac_first_success(const PointSet& points, std::size_t t,
                                                const Polynomial& target,
                                                std::uint64_t seed,
                                                std::size_t max_trials);

// (ell / f)^t, the mean of the geometric first-success trial count.
// Throws DomainError unless 0 < f <= ell.
double expected_trials(double ell, double f, unsigned t);

}  // namespace linemark

#endif  // LINEMARK_GEOMETRY_HPP_
