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

#ifndef HQA_INK_HPP_
#define HQA_INK_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hqa {

// One pen sample. Screen convention: y grows downward. `t` is seconds since
// the start of the sample.
struct InkPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;

  friend bool operator==(const InkPoint&, const InkPoint&) = default;
};

// One continuous pen-down segment.
struct PenStroke {
  std::vector<InkPoint> points;

  double duration() const {
    return points.size() < 2 ? 0.0 : points.back().t - points.front().t;
  }
  friend bool operator==(const PenStroke&, const PenStroke&) = default;
};

// Reference lines printed on the writing template. With y growing downward
// the median zone is [median_top_y, baseline_y].
struct RefLines {
  double baseline_y = 100.0;
  double median_top_y = 40.0;

  bool valid() const;
  double band_height() const { return baseline_y - median_top_y; }
  friend bool operator==(const RefLines&, const RefLines&) = default;
};

enum class Script { kArabicChar, kArabicWord, kLatinChar, kDigit, kSymbol };

std::string_view to_string(Script script);
std::optional<Script> parse_script(std::string_view text);

struct SampleMeta {
  Script script = Script::kLatinChar;
  std::string target;
  std::optional<std::string> writer_id;

  friend bool operator==(const SampleMeta&, const SampleMeta&) = default;
};

// A recorded attempt at one target symbol. Stroke order is acquisition order.
struct InkSample {
  std::vector<PenStroke> strokes;
  RefLines guidelines;
  SampleMeta meta;

  std::size_t point_count() const;
  bool empty() const { return point_count() == 0; }
  friend bool operator==(const InkSample&, const InkSample&) = default;
};

enum class Zone { kUpper, kMedian, kLower };

struct ZoneHistogram {
  double upper = 0.0;
  double median = 0.0;
  double lower = 0.0;
};

// Boundary points (y == median_top_y or y == baseline_y) are Median.
Zone zone_of(const InkPoint& point, const RefLines& lines);

// Per-zone point fractions over every stroke of the sample.
ZoneHistogram zone_histogram(const InkSample& sample);
ZoneHistogram zone_histogram(std::span<const InkPoint> points,
                             const RefLines& lines);

// Axis-aligned bounding box of every point in the sample.
struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

// Throws DegenerateInput for a sample without points.
BoundingBox bounding_box(const InkSample& sample);

}  // namespace hqa

#endif  // HQA_INK_HPP_
