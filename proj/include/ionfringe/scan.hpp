// Copyright 2026 The ionfringe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IONFRINGE_SCAN_HPP
#define IONFRINGE_SCAN_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "ionfringe/atom_model.hpp"
#include "ionfringe/types.hpp"

namespace ionfringe {

/// Angular sampling of detector directions in a plane. A full turn is
/// sampled without its duplicate endpoint; shorter ranges include both ends.
struct AngleScan {
  ScanPlane plane = ScanPlane::xy;
  double start = 0.0;
  double stop = 2.0 * std::numbers::pi;
  int points = 360;

  bool full_turn() const {
    return std::abs(std::abs(stop - start) - 2.0 * std::numbers::pi) < 1e-12;
  }

  double angle(int i) const {
    const int intervals = full_turn() ? points : points - 1;
    return start + (stop - start) * static_cast<double>(i) / intervals;
  }

  std::vector<double> angles() const {
    detail::require(points >= 2, "a scan needs at least two points");
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = angle(i);
    return out;
  }
};

struct FringeExtrema {
  double min = 0.0;
  double max = 0.0;
  double argmin = 0.0;
  double argmax = 0.0;

  /// (max - min) / (max + min); zero for an identically vanishing signal.
  double visibility() const {
    return max + min > 0.0 ? (max - min) / (max + min) : 0.0;
  }
};

/// Extrema of f over the scanned range. Every local extremum of the sampled
/// sequence is polished with Brent's method inside its neighbouring samples,
/// so the result does not depend on whether the grid hits a fringe peak.
template <class F>
FringeExtrema fringe_extrema(F&& f, const AngleScan& scan) {
  const auto angles = scan.angles();
  const auto n = angles.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = f(angles[i]);

  const bool wrap = scan.full_turn();
  const int bits = std::numeric_limits<double>::digits / 2;
  FringeExtrema ext{values[0], values[0], angles[0], angles[0]};
  auto consider = [&](double a, double v) {
    if (v < ext.min) ext.min = v, ext.argmin = a;
    if (v > ext.max) ext.max = v, ext.argmax = a;
  };
  for (std::size_t i = 0; i < n; ++i) {
    consider(angles[i], values[i]);
    const bool has_prev = wrap || i > 0;
    const bool has_next = wrap || i + 1 < n;
    if (!has_prev || !has_next) continue;
    const std::size_t ip = (i + n - 1) % n;
    const std::size_t in = (i + 1) % n;
    const double step = (scan.stop - scan.start) /
                        static_cast<double>(wrap ? n : n - 1);
    const double lo = angles[i] - std::abs(step);
    const double hi = angles[i] + std::abs(step);
    if (values[i] >= values[ip] && values[i] >= values[in]) {
      auto r = boost::math::tools::brent_find_minima(
          [&](double a) { return -f(a); }, lo, hi, bits);
      consider(r.first, -r.second);
    }
    if (values[i] <= values[ip] && values[i] <= values[in]) {
      auto r = boost::math::tools::brent_find_minima(f, lo, hi, bits);
      consider(r.first, r.second);
    }
  }
  return ext;
}

}  // namespace ionfringe

#endif  // IONFRINGE_SCAN_HPP
