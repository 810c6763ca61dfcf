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

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "hqa/errors.hpp"
#include "hqa/filter.hpp"
#include "test_util.hpp"

namespace hqa {
namespace {

SosFilter default_filter() { return design_cheby2_lowpass(4, 40.0, 10.0, 100.0); }

// Amplitude of a sinusoid at `freq` fitted by least squares to the central
// half of `y`.
double fitted_amplitude(const std::vector<double>& y, double freq, double rate) {
  const std::size_t lo = y.size() / 4;
  const std::size_t hi = 3 * y.size() / 4;
  Eigen::MatrixXd a(hi - lo, 3);
  Eigen::VectorXd b(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) {
    const double t = static_cast<double>(i) / rate;
    a.row(i - lo) << std::sin(2 * testing::kPi * freq * t),
        std::cos(2 * testing::kPi * freq * t), 1.0;
    b(i - lo) = y[i];
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  return std::hypot(c(0), c(1));
}

std::vector<double> tone(double freq, double rate, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::sin(2 * testing::kPi * freq * static_cast<double>(i) / rate);
  }
  return x;
}

TEST(FilterDesignTest, MatchesReferenceSections) {
  // Frozen from an independent reference design (scipy.signal.cheby2,
  // output='sos').
  const double expected[2][6] = {
      {0.012483820797182145, -0.0040493800263648435, 0.012483820797182148, 1.0,
       -1.4211631127606117, 0.5181470650753173},
      {1.0, -1.5597125423334535, 1.0000000000000004, 1.0, -1.7096009567288524,
       0.8045656182503007}};
  const SosFilter f = default_filter();
  ASSERT_EQ(f.sections.size(), 2u);
  // The reference leaves the overall gain on the first section only; compare
  // normalized numerators and denominators directly.
  for (int s = 0; s < 2; ++s) {
    const Biquad& q = f.sections[static_cast<std::size_t>(s)];
    const double g = expected[s][0] / q.b0;
    EXPECT_NEAR(q.b1 * g, expected[s][1], 1e-9) << s;
    EXPECT_NEAR(q.b2 * g, expected[s][2], 1e-9) << s;
    EXPECT_NEAR(q.a1, expected[s][4], 1e-12) << s;
    EXPECT_NEAR(q.a2, expected[s][5], 1e-12) << s;
  }
}

TEST(FilterDesignTest, FrequencyResponse) {
  const SosFilter f = default_filter();
  EXPECT_NEAR(f.gain_db(0.0, 100.0), 0.0, 1e-9);
  EXPECT_GT(f.gain_db(2.0, 100.0), -1.0);
  EXPECT_NEAR(f.gain_db(10.0, 100.0), -40.0, 1e-6);
  EXPECT_LT(f.gain_db(20.0, 100.0), -30.0);
}

TEST(FilterDesignTest, RejectsBadParameters) {
  EXPECT_THROW(design_cheby2_lowpass(0, 40, 10, 100), InputError);
  EXPECT_THROW(design_cheby2_lowpass(4, 40, 60, 100), InputError);
}

TEST(FiltFiltTest, MatchesReferenceOnRamp) {
  std::vector<double> x(50);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = static_cast<double>(i) / 49.0;
    x[i] = s * s;
  }
  const auto y = filtfilt(default_filter(), x);
  // Frozen from scipy.signal.sosfiltfilt(padtype='even', padlen=49).
  EXPECT_NEAR(y[3], 0.004101819404497085, 1e-12);
  EXPECT_NEAR(y[20], 0.16854837597783104, 1e-12);
  EXPECT_NEAR(y[40], 0.6824474766175141, 1e-12);
}

TEST(FiltFiltTest, DcUnchanged) {
  const std::vector<double> x(80, 3.25);
  for (double v : filtfilt(default_filter(), x)) EXPECT_NEAR(v, 3.25, 1e-9);
}

TEST(FiltFiltTest, PassbandAndStopbandProbes) {
  const auto f = default_filter();
  const auto low = filtfilt(f, tone(2.0, 100.0, 400));
  const double low_db = 20 * std::log10(fitted_amplitude(low, 2.0, 100.0));
  EXPECT_LE(std::abs(low_db), 1.0);
  const auto high = filtfilt(f, tone(20.0, 100.0, 400));
  const double high_db = 20 * std::log10(fitted_amplitude(high, 20.0, 100.0));
  EXPECT_LE(high_db, -30.0);
}

TEST(FiltFiltTest, TooShortThrows) {
  const auto f = default_filter();
  EXPECT_THROW(filtfilt(f, std::vector<double>(f.pad_length(), 1.0)), InputError);
  EXPECT_NO_THROW(filtfilt(f, std::vector<double>(f.min_length(), 1.0)));
}

}  // namespace
}  // namespace hqa
