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
#include "hqa/sd_dd.hpp"
#include "test_util.hpp"

namespace hqa {
namespace {

using testing::kPi;

StrokeSequence random_sequence(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  StrokeSequence s;
  for (std::size_t i = 0; i < n; ++i) {
    CompareVector v{};
    for (double& x : v) x = g(rng);
    s.strokes.push_back(v);
  }
  return s;
}

// Brute-force restatement of the comparison: explicit candidate lists,
// standardized vectors built from scratch.
double oracle_directional(const StrokeSequence& a, const StrokeSequence& b,
                          const SelectorVector& sel, const FeatureStats& st) {
  auto diff = [&](std::size_t d, double x, double y) {
    double r = x - y;
    if (st.period[d] > 0) {
      while (r > st.period[d] / 2) r -= st.period[d];
      while (r < -st.period[d] / 2) r += st.period[d];
    }
    return r;
  };
  auto z = [&](const CompareVector& v) {
    std::vector<double> out;
    for (std::size_t d = 0; d < kCompareDim; ++d) {
      out.push_back(sel.weights[d] * diff(d, v[d], st.mean[d]) / st.std[d]);
    }
    return out;
  };
  auto cosine = [](const std::vector<double>& u, const std::vector<double>& v) {
    double dot = 0, nu = 0, nv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      dot += u[i] * v[i];
      nu += u[i] * u[i];
      nv += v[i] * v[i];
    }
    return (nu == 0 || nv == 0) ? 0.0 : dot / std::sqrt(nu * nv);
  };
  std::vector<double> dd;
  const int nb = static_cast<int>(b.size());
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    std::vector<int> cands;
    for (int off = 0; off <= sel.radius; ++off) {
      cands.push_back(std::clamp(i - off, 0, nb - 1));
      cands.push_back(std::clamp(i + off, 0, nb - 1));
    }
    int best = cands[0];
    for (int j : cands) {
      const double s = cosine(z(a.strokes[i]), z(b.strokes[j]));
      const double sb = cosine(z(a.strokes[i]), z(b.strokes[best]));
      if (s > sb + 1e-15) best = j;
    }
    double sum = 0;
    for (std::size_t d = 0; d < kCompareDim; ++d) {
      const double t = sel.weights[d] * diff(d, a.strokes[i][d], b.strokes[best][d]) / st.std[d];
      sum += t * t;
    }
    dd.push_back(std::sqrt(sum));
  }
  double mean = 0;
  for (double d : dd) mean += d;
  mean /= dd.size();
  std::vector<double> s = dd;
  std::sort(s.begin(), s.end());
  const double med = s.size() % 2 ? s[s.size() / 2] : 0.5 * (s[s.size() / 2 - 1] + s[s.size() / 2]);
  return mean + std::abs(static_cast<double>(a.size()) - static_cast<double>(b.size())) * med;
}

TEST(CriterionTest, NamesRoundTrip) {
  for (Criterion c : kAllCriteria) EXPECT_EQ(parse_criterion(to_string(c)), c);
  EXPECT_FALSE(parse_criterion("speed").has_value());
}

TEST(SelectorTest, CriterionLayouts) {
  for (Criterion c : kAllCriteria) EXPECT_TRUE(SelectorVector::for_criterion(c).valid());
  const auto order = SelectorVector::for_criterion(Criterion::kOrder);
  EXPECT_EQ(order.radius, 0);
  EXPECT_EQ(std::count(order.weights.begin(), order.weights.end(), 1.0), 9);
  const auto pos = SelectorVector::for_criterion(Criterion::kPosition);
  EXPECT_EQ(pos.weights[kFeatUpper], 1.0);
  EXPECT_EQ(pos.weights[kFeatK], 0.0);
  const auto kin = SelectorVector::for_criterion(Criterion::kKinematic);
  EXPECT_EQ(kin.weights[kFeatTheta], 0.0);
  SelectorVector empty;
  EXPECT_FALSE(empty.valid());
}

TEST(SdDdTest, HandExample) {
  StrokeSequence test, model;
  CompareVector u{}, v{};
  u[kFeatA] = 1.0;
  v[kFeatA] = 0.6;
  v[kFeatB] = 0.8;
  test.strokes = {u};
  model.strokes = {v};
  const std::vector<StrokeSequence> models = {model};
  const double dd = sd_dd(test, models, SelectorVector::for_criterion(Criterion::kShape),
                          FeatureStats::unit());
  EXPECT_NEAR(dd, 0.894427191, 1e-6);
}

TEST(SdDdTest, SelfDistanceIsZero) {
  std::mt19937_64 rng(5);
  std::vector<StrokeSequence> pool;
  for (int k = 0; k < 4; ++k) pool.push_back(random_sequence(rng, 3 + k));
  const FeatureStats stats = FeatureStats::fit(pool);
  for (Criterion c : kAllCriteria) {
    for (const auto& s : pool) {
      const std::vector<StrokeSequence> models = {s};
      EXPECT_DOUBLE_EQ(sd_dd(s, models, SelectorVector::for_criterion(c), stats), 0.0);
    }
  }
}

TEST(SdDdTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(17);
  std::vector<StrokeSequence> pool;
  for (int k = 0; k < 6; ++k) pool.push_back(random_sequence(rng, 2 + k % 4));
  const FeatureStats stats = FeatureStats::fit(pool);
  for (Criterion c : kAllCriteria) {
    const auto sel = SelectorVector::for_criterion(c);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = 0; j < pool.size(); ++j) {
        EXPECT_NEAR(directional_distance(pool[i], pool[j], sel, stats),
                    oracle_directional(pool[i], pool[j], sel, stats), 1e-9);
      }
    }
  }
}

TEST(SdDdTest, ModelPermutationInvariance) {
  std::mt19937_64 rng(23);
  std::vector<StrokeSequence> models;
  for (int k = 0; k < 5; ++k) models.push_back(random_sequence(rng, 3));
  const auto test = random_sequence(rng, 4);
  const FeatureStats stats = FeatureStats::fit(models);
  const auto sel = SelectorVector::for_criterion(Criterion::kShape);
  const double base = sd_dd(test, models, sel, stats);
  std::vector<std::size_t> idx = {0, 1, 2, 3, 4};
  while (std::next_permutation(idx.begin(), idx.end())) {
    std::vector<StrokeSequence> perm;
    for (std::size_t i : idx) perm.push_back(models[i]);
    EXPECT_NEAR(sd_dd(test, perm, sel, stats), base, 1e-12);
  }
}

TEST(SdDdTest, JitterMonotonicity) {
  std::mt19937_64 rng(31);
  const auto model = random_sequence(rng, 4);
  const std::vector<StrokeSequence> models = {model};
  const FeatureStats stats = FeatureStats::fit(models);
  std::normal_distribution<double> g(0.0, 1.0);
  for (Criterion c : kAllCriteria) {
    const auto sel = SelectorVector::for_criterion(c);
    double previous = -1.0;
    for (double amp : {0.0, 0.05, 0.1, 0.2, 0.4, 0.8}) {
      std::vector<double> dd;
      for (int trial = 0; trial < 100; ++trial) {
        StrokeSequence copy = model;
        for (auto& v : copy.strokes) {
          for (std::size_t d = 0; d < kCompareDim; ++d) v[d] += amp * stats.std[d] * g(rng);
        }
        dd.push_back(sd_dd(copy, models, sel, stats));
      }
      std::nth_element(dd.begin(), dd.begin() + 50, dd.end());
      EXPECT_GE(dd[50], previous) << to_string(c) << " amp " << amp;
      previous = dd[50];
    }
  }
}

TEST(SdDdTest, OrderUsesNoNeighbourhood) {
  StrokeSequence a, b;
  CompareVector u{}, v{};
  u[kFeatK] = 10.0;
  u[kFeatA] = 5.0;
  v[kFeatK] = 1.0;
  v[kFeatB] = 5.0;
  a.strokes = {u, v};
  b.strokes = {v, u};
  const std::vector<StrokeSequence> models = {b};
  const FeatureStats stats = FeatureStats::unit();
  EXPECT_NEAR(sd_dd(a, models, SelectorVector::for_criterion(Criterion::kShape), stats), 0.0,
              1e-12);
  EXPECT_GT(sd_dd(a, models, SelectorVector::for_criterion(Criterion::kOrder), stats), 1.0);
}

TEST(SdDdTest, StrokeCountPenalty) {
  StrokeSequence one, two;
  CompareVector u{}, v{};
  u[kFeatA] = 1.0;
  v[kFeatA] = 1.0;
  v[kFeatB] = 3.0;
  one.strokes = {u};
  two.strokes = {u, v};
  const auto sel = SelectorVector::for_criterion(Criterion::kShape);
  const FeatureStats stats = FeatureStats::unit();
  // two -> one: distances {0, 3}, mean 1.5, one missing stroke adds median 1.5.
  EXPECT_NEAR(directional_distance(two, one, sel, stats), 3.0, 1e-12);
  EXPECT_NEAR(directional_distance(one, two, sel, stats), 0.0, 1e-12);
  const std::vector<StrokeSequence> models = {one};
  EXPECT_NEAR(sd_dd(two, models, sel, stats), 1.5, 1e-12);
}

TEST(SdDdTest, AngularDifferencesWrap) {
  FeatureStats stats = FeatureStats::unit();
  stats.period[kFeatTheta] = kPi;
  stats.period[kFeatThetaP] = 2 * kPi;
  CompareVector u{}, v{};
  u[kFeatTheta] = kPi / 2 - 0.01;
  v[kFeatTheta] = -kPi / 2 + 0.01;
  u[kFeatThetaP] = kPi - 0.02;
  v[kFeatThetaP] = -kPi + 0.02;
  const auto sel = SelectorVector::for_criterion(Criterion::kDirection);
  EXPECT_NEAR(normalized_distance(u, v, stats, sel), std::hypot(0.02, 0.04), 1e-12);
}

TEST(SdDdTest, FittedStatsUseCircularMean) {
  StrokeSequence s;
  for (double th : {kPi - 0.1, -kPi + 0.1}) {
    CompareVector v{};
    v[kFeatThetaP] = th;
    s.strokes.push_back(v);
  }
  const std::vector<StrokeSequence> pool = {s};
  const FeatureStats stats = FeatureStats::fit(pool);
  EXPECT_NEAR(std::abs(stats.mean[kFeatThetaP]), kPi, 1e-9);
  EXPECT_NEAR(stats.std[kFeatThetaP], 0.1, 1e-9);
  EXPECT_EQ(stats.std[kFeatK], FeatureStats::kStdFloor);
}

TEST(SdDdTest, EmptyInputsThrow) {
  StrokeSequence empty, one;
  one.strokes.push_back(CompareVector{});
  const auto sel = SelectorVector::for_criterion(Criterion::kShape);
  EXPECT_THROW(sd_dd(one, {}, sel, FeatureStats::unit()), InputError);
  const std::vector<StrokeSequence> models = {one};
  EXPECT_THROW(sd_dd(empty, models, sel, FeatureStats::unit()), InputError);
}

TEST(StrokeSequenceTest, ZonesAndDegenerateStrokes) {
  VelocityProfile vel;
  vel.dt = 0.01;
  for (int i = 0; i < 40; ++i) {
    vel.t.push_back(0.01 * i);
    vel.v.push_back(1.0);
    vel.position.push_back({0.0, i < 20 ? 20.0 : 70.0});
  }
  vel.stroke_spans.push_back({0, 40});
  BemVector bem;
  BetaStroke s0, s1, s2;
  s0.span = {0, 20};
  s1.span = {20, 40};
  s2.span = {20, 40};
  s2.degenerate = true;
  bem.strokes = {s0, s1, s2};
  const RefLines lines{100.0, 40.0};
  const auto seq = stroke_sequence(bem, vel, lines);
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_DOUBLE_EQ(seq.strokes[0][kFeatUpper], 1.0);
  EXPECT_DOUBLE_EQ(seq.strokes[1][kFeatMedian], 1.0);
}

}  // namespace
}  // namespace hqa
