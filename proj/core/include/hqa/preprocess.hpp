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

#ifndef HQA_PREPROCESS_HPP_
#define HQA_PREPROCESS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "hqa/ink.hpp"

namespace hqa {

inline constexpr double kDefaultSampleRate = 100.0;
inline constexpr double kNormalizedHeight = 128.0;

struct LowpassConfig {
  int order = 4;
  double stopband_db = 40.0;
  double cutoff_hz = 10.0;  // stopband edge
};

struct PreprocessConfig {
  double sample_rate = kDefaultSampleRate;
  LowpassConfig lowpass;
  double target_height = kNormalizedHeight;
};

// Half-open index range [begin, end).
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Curvilinear speed on one uniform time grid covering the whole sample.
// Pen-up gaps hold zero speed; `position` repeats the last pen-down point
// there.
struct VelocityProfile {
  double dt = 1.0 / kDefaultSampleRate;
  std::vector<double> t;
  std::vector<double> v;
  std::vector<Point2> position;
  std::vector<IndexRange> stroke_spans;  // one per pen stroke

  std::size_t size() const { return v.size(); }
  bool empty() const { return v.empty(); }
};

// Each stroke is re-sampled on a uniform grid whose step is the closest
// divisor of its duration to 1/rate. Endpoints are kept exactly. Throws
// DegenerateInput for a stroke of zero duration, InputError for rate <= 0.
InkSample resample_uniform(const InkSample& sample, double rate);

struct LowpassResult {
  InkSample sample;
  // Strokes shorter than the filter warm-up, passed through unfiltered.
  std::vector<std::size_t> unfiltered_strokes;
};

// Zero-phase Chebyshev II low-pass of x(t) and y(t) for every stroke;
// endpoints are clamped back to their original values.
LowpassResult lowpass(const InkSample& sample, double sample_rate,
                      const LowpassConfig& config = {});

// Uniform scale to `target_height` (width-based when the height is zero),
// guidelines scaled alike, bounding-box top-left moved to the origin.
// Throws DegenerateInput when width and height are both zero.
InkSample normalize_size(const InkSample& sample,
                         double target_height = kNormalizedHeight);

// Central differences inside strokes, one-sided at stroke ends.
VelocityProfile velocity_profile(const InkSample& sample, double rate);

struct Preprocessed {
  InkSample sample;
  std::vector<std::string> warnings;
};

// resample_uniform -> lowpass -> normalize_size.
Preprocessed preprocess(const InkSample& sample,
                        const PreprocessConfig& config = {});

}  // namespace hqa

#endif  // HQA_PREPROCESS_HPP_
