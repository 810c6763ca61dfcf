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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hqa/errors.hpp"
#include "hqa/preprocess.hpp"
#include "test_util.hpp"

namespace hqa {
namespace {

using testing::kPi;
using testing::make_sample;
using testing::parametric_stroke;

// Piecewise-linear evaluation by scanning every segment.
std::pair<double, double> interpolate_oracle(const PenStroke& s, double t) {
  for (std::size_t i = 0; i + 1 < s.points.size(); ++i) {
    const auto& a = s.points[i];
    const auto& b = s.points[i + 1];
    if (t >= a.t && t <= b.t) {
      const double f = (t - a.t) / (b.t - a.t);
      return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
    }
  }
  return {s.points.back().x, s.points.back().y};
}

TEST(ResampleTest, LinearInterpolation) {
  const auto s = make_sample({{{{0, 0, 0}, {1, 0, 1}}}});
  const auto r = resample_uniform(s, 4.0);
  ASSERT_EQ(r.strokes[0].points.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_DOUBLE_EQ(r.strokes[0].points[static_cast<std::size_t>(i)].x, 0.25 * i);
  }
}

TEST(ResampleTest, UniformInputUnchanged) {
  const auto s = make_sample(
      {parametric_stroke([](double u) { return std::pair{u * 10, u * u}; }, 0.0, 0.5)});
  const auto r = resample_uniform(s, 100.0);
  ASSERT_EQ(r.strokes[0].points.size(), s.strokes[0].points.size());
  for (std::size_t i = 0; i < r.strokes[0].points.size(); ++i) {
    EXPECT_NEAR(r.strokes[0].points[i].x, s.strokes[0].points[i].x, 1e-12);
    EXPECT_NEAR(r.strokes[0].points[i].y, s.strokes[0].points[i].y, 1e-12);
  }
}

TEST(ResampleTest, NonuniformMatchesOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dt(0.001, 0.04);
  std::normal_distribution<double> d(0.0, 5.0);
  PenStroke st;
  double t = 0.2;
  for (int i = 0; i < 60; ++i) {
    st.points.push_back({d(rng), d(rng), t});
    t += dt(rng);
  }
  const auto r = resample_uniform(make_sample({st}), 100.0);
  const auto& out = r.strokes[0].points;
  EXPECT_EQ(out.front(), st.points.front());
  EXPECT_EQ(out.back(), st.points.back());
  const double step = out[1].t - out[0].t;
  for (std::size_t i = 1; i < out.size(); ++i) {
    EXPECT_NEAR(out[i].t - out[i - 1].t, step, 1e-9);
    const auto [x, y] = interpolate_oracle(st, out[i].t);
    EXPECT_NEAR(out[i].x, x, 1e-9);
    EXPECT_NEAR(out[i].y, y, 1e-9);
  }
}

TEST(ResampleTest, ZeroDurationThrows) {
  EXPECT_THROW(resample_uniform(make_sample({{{{0, 0, 1}}}}), 100.0), DegenerateInput);
}

TEST(LowpassTest, ShortStrokeReportedAndUnchanged) {
  const auto s = make_sample({{{{0, 0, 0}, {1, 1, 0.01}, {2, 2, 0.02}}}});
  const auto r = lowpass(s, 100.0);
  ASSERT_EQ(r.unfiltered_strokes.size(), 1u);
  EXPECT_EQ(r.sample, s);
}

TEST(LowpassTest, EndpointsClampedAndCountsKept) {
  const auto s = make_sample({parametric_stroke(
      [](double u) { return std::pair{100 * u, 20 * std::sin(9 * u)}; }, 0.0, 0.8)});
  const auto r = lowpass(s, 100.0);
  EXPECT_TRUE(r.unfiltered_strokes.empty());
  ASSERT_EQ(r.sample.strokes[0].points.size(), s.strokes[0].points.size());
  EXPECT_EQ(r.sample.strokes[0].points.front(), s.strokes[0].points.front());
  EXPECT_EQ(r.sample.strokes[0].points.back(), s.strokes[0].points.back());
}

TEST(NormalizeTest, RatioPreservedAndTopLeftAtOrigin) {
  const auto s = make_sample({{{{10, 20, 0}, {110, 276, 1}}}});
  const auto n = normalize_size(s);
  const auto box = bounding_box(n);
  EXPECT_DOUBLE_EQ(box.height(), 128.0);
  EXPECT_DOUBLE_EQ(box.width(), 50.0);
  EXPECT_DOUBLE_EQ(box.min_x, 0.0);
  EXPECT_DOUBLE_EQ(box.min_y, 0.0);
  EXPECT_DOUBLE_EQ(n.guidelines.baseline_y, (100.0 - 20.0) * 0.5);
}

TEST(NormalizeTest, IdempotentAndDoubling) {
  const auto s = make_sample({{{{0, 0, 0}, {30, 64, 1}}}});
  const auto once = normalize_size(s);
  EXPECT_DOUBLE_EQ(once.strokes[0].points[1].x, 60.0);
  EXPECT_EQ(normalize_size(once), once);
}

TEST(NormalizeTest, HorizontalLineUsesWidth) {
  const auto n = normalize_size(make_sample({{{{0, 5, 0}, {64, 5, 1}}}}));
  EXPECT_DOUBLE_EQ(n.strokes[0].points[1].x, 128.0);
  EXPECT_THROW(normalize_size(make_sample({{{{1, 1, 0}, {1, 1, 1}}}})),
               DegenerateInput);
}

TEST(VelocityTest, LinearMotionHasUnitSpeed) {
  const auto s = make_sample(
      {parametric_stroke([](double u) { return std::pair{u, 0.0}; }, 0.0, 1.0)});
  const auto v = velocity_profile(s, 100.0);
  for (double x : v.v) EXPECT_NEAR(x, 1.0, 1e-9);
}

TEST(VelocityTest, StationaryPenIsZero) {
  const auto s = make_sample(
      {parametric_stroke([](double) { return std::pair{3.0, 4.0}; }, 0.0, 0.3)});
  for (double x : velocity_profile(s, 100.0).v) EXPECT_EQ(x, 0.0);
}

TEST(VelocityTest, CircleSpeedMatchesAnalytic) {
  const double r = 40.0;
  const double omega = 2 * kPi;  // one turn per second
  const auto s = make_sample({parametric_stroke(
      [&](double u) {
        return std::pair{r * std::cos(omega * u), r * std::sin(omega * u)};
      },
      0.0, 1.0)});
  const auto v = velocity_profile(s, 100.0);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    EXPECT_NEAR(v.v[i], r * omega, 0.01 * r * omega);
  }
}

TEST(VelocityTest, GapsHoldZeroAndSpansAreMapped) {
  const auto s = make_sample(
      {parametric_stroke([](double u) { return std::pair{10 * u, 0.0}; }, 0.0, 0.2),
       parametric_stroke([](double u) { return std::pair{10 * u, 5.0}; }, 0.5, 0.2)});
  const auto v = velocity_profile(s, 100.0);
  ASSERT_EQ(v.stroke_spans.size(), 2u);
  EXPECT_EQ(v.stroke_spans[0], (IndexRange{0, 21}));
  EXPECT_EQ(v.stroke_spans[1], (IndexRange{50, 71}));
  for (std::size_t g = 21; g < 50; ++g) EXPECT_EQ(v.v[g], 0.0);
  for (std::size_t g = 1; g < v.t.size(); ++g) {
    EXPECT_NEAR(v.t[g] - v.t[g - 1], 0.01, 1e-12);
  }
}

TEST(VelocityTest, TimeReversalReversesProfile) {
  auto f = [](double u) { return std::pair{50 * u * u, 20 * std::sin(3 * u)}; };
  const auto fwd = make_sample({parametric_stroke(f, 0.0, 0.6)});
  InkSample rev = fwd;
  auto& pts = rev.strokes[0].points;
  std::reverse(pts.begin(), pts.end());
  const double end = fwd.strokes[0].points.back().t;
  for (auto& p : pts) p.t = end - p.t;
  const auto a = velocity_profile(fwd, 100.0);
  const auto b = velocity_profile(rev, 100.0);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    EXPECT_NEAR(a.v[i], b.v[a.size() - 1 - i], 1e-9);
  }
}

TEST(PreprocessTest, DropsUnusableStrokesWithWarning) {
  auto s = make_sample({{{{0, 0, 0}}},
                        parametric_stroke(
                            [](double u) { return std::pair{u * 30, u * 60}; }, 0.0, 0.5)});
  const auto p = preprocess(s);
  EXPECT_EQ(p.sample.strokes.size(), 1u);
  EXPECT_FALSE(p.warnings.empty());
  EXPECT_NEAR(bounding_box(p.sample).height(), 128.0, 1e-9);
  EXPECT_THROW(preprocess(make_sample({{{{0, 0, 0}}}})), DegenerateInput);
}

}  // namespace
}  // namespace hqa
