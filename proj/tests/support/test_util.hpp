// Copyright 2026 The HQA Authors
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

// Small builders shared by the unit tests.

#ifndef HQA_TESTS_SUPPORT_TEST_UTIL_HPP_
#define HQA_TESTS_SUPPORT_TEST_UTIL_HPP_

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "hqa/ink.hpp"

namespace hqa::testing {

inline constexpr double kPi = std::numbers::pi;

// Samples `f(s)` for s in [0, 1] at `rate` points per second over `duration`.
inline PenStroke parametric_stroke(
    const std::function<std::pair<double, double>(double)>& f, double t0,
    double duration, double rate = 100.0) {
  PenStroke stroke;
  const int n = static_cast<int>(std::round(duration * rate));
  for (int i = 0; i <= n; ++i) {
    const double s = static_cast<double>(i) / n;
    const auto [x, y] = f(s);
    stroke.points.push_back({x, y, t0 + s * duration});
  }
  return stroke;
}

inline InkSample make_sample(std::vector<PenStroke> strokes,
                             const char* target = "test") {
  InkSample sample;
  sample.strokes = std::move(strokes);
  sample.meta.target = target;
  return sample;
}

// Straight segment from (x0, y0) to (x1, y1), bell-shaped progress.
inline PenStroke bell_line(double x0, double y0, double x1, double y1,
                           double t0, double duration) {
  return parametric_stroke(
      [=](double s) {
        const double u = s * s * (3.0 - 2.0 * s);
        return std::pair{x0 + u * (x1 - x0), y0 + u * (y1 - y0)};
      },
      t0, duration);
}

}  // namespace hqa::testing

#endif  // HQA_TESTS_SUPPORT_TEST_UTIL_HPP_
