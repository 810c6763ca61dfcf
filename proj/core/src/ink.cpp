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

#include "hqa/ink.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "hqa/errors.hpp"

namespace hqa {
namespace {

constexpr std::array<std::pair<Script, std::string_view>, 5> kScriptNames = {{
    {Script::kArabicChar, "arabic_char"},
    {Script::kArabicWord, "arabic_word"},
    {Script::kLatinChar, "latin_char"},
    {Script::kDigit, "digit"},
    {Script::kSymbol, "symbol"},
}};

}  // namespace

bool RefLines::valid() const {
  return std::isfinite(baseline_y) && std::isfinite(median_top_y) &&
         median_top_y < baseline_y;
}

std::string_view to_string(Script script) {
  for (const auto& [value, name] : kScriptNames) {
    if (value == script) return name;
  }
  return "latin_char";
}

std::optional<Script> parse_script(std::string_view text) {
  for (const auto& [value, name] : kScriptNames) {
    if (name == text) return value;
  }
  return std::nullopt;
}

std::size_t InkSample::point_count() const {
  std::size_t n = 0;
  for (const auto& stroke : strokes) n += stroke.points.size();
  return n;
}

Zone zone_of(const InkPoint& point, const RefLines& lines) {
  if (point.y < lines.median_top_y) return Zone::kUpper;
  if (point.y > lines.baseline_y) return Zone::kLower;
  return Zone::kMedian;
}

ZoneHistogram zone_histogram(std::span<const InkPoint> points,
                             const RefLines& lines) {
  ZoneHistogram hist;
  if (points.empty()) return hist;
  std::size_t upper = 0;
  std::size_t median = 0;
  std::size_t lower = 0;
  for (const auto& p : points) {
    switch (zone_of(p, lines)) {
      case Zone::kUpper: ++upper; break;
      case Zone::kMedian: ++median; break;
      case Zone::kLower: ++lower; break;
    }
  }
  const double n = static_cast<double>(points.size());
  hist.upper = static_cast<double>(upper) / n;
  hist.lower = static_cast<double>(lower) / n;
  // Close the sum exactly.
  hist.median = static_cast<double>(median) / n;
  if (median > 0) hist.median = 1.0 - hist.upper - hist.lower;
  return hist;
}

ZoneHistogram zone_histogram(const InkSample& sample) {
  std::vector<InkPoint> all;
  all.reserve(sample.point_count());
  for (const auto& stroke : sample.strokes) {
    all.insert(all.end(), stroke.points.begin(), stroke.points.end());
  }
  return zone_histogram(all, sample.guidelines);
}

BoundingBox bounding_box(const InkSample& sample) {
  bool any = false;
  BoundingBox box;
  for (const auto& stroke : sample.strokes) {
    for (const auto& p : stroke.points) {
      if (!any) {
        box = {p.x, p.y, p.x, p.y};
        any = true;
        continue;
      }
      box.min_x = std::min(box.min_x, p.x);
      box.min_y = std::min(box.min_y, p.y);
      box.max_x = std::max(box.max_x, p.x);
      box.max_y = std::max(box.max_y, p.y);
    }
  }
  if (!any) throw DegenerateInput("sample has no points");
  return box;
}

}  // namespace hqa
