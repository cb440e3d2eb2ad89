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

#ifndef LINEMARK_TESTS_SUPPORT_HPP_
#define LINEMARK_TESTS_SUPPORT_HPP_

#include <vector>

#include "linemark/geometry.hpp"
#include "linemark/gf2n.hpp"
#include "linemark/rng.hpp"
#include "oracles/gf_ref.hpp"

namespace testing_support {

inline const std::vector<unsigned>& widths() {
  static const std::vector<unsigned> w{6, 8, 12, 16, 32, 64};
  return w;
}

inline oracle::RefField ref_of(const linemark::Field& f) {
  return oracle::ref_field(f.bits(), f.modulus_low());
}

inline std::uint64_t draw(linemark::Rng& rng, const linemark::Field& f) {
  return rng.next() & f.mask();
}

inline std::uint64_t draw_nonzero(linemark::Rng& rng, const linemark::Field& f) {
  std::uint64_t v;
  do {
    v = draw(rng, f);
  } while (v == 0);
  return v;
}

inline linemark::PointSet random_points(linemark::Rng& rng, const linemark::Field& f,
                                        std::size_t count) {
  linemark::PointSet ps(f);
  for (std::size_t i = 0; i < count; ++i) ps.push_back({draw(rng, f), draw(rng, f)});
  return ps;
}

inline std::vector<oracle::RefPoint> ref_points(const linemark::PointSet& ps) {
  std::vector<oracle::RefPoint> out;
  for (std::size_t i = 0; i < ps.size(); ++i) out.push_back({ps[i].x, ps[i].y});
  return out;
}

}  // namespace testing_support

#endif  // LINEMARK_TESTS_SUPPORT_HPP_
