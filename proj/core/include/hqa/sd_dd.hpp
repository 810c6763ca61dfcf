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


// Similarity-detection / dissimilarity-distance comparison of beta stroke
// sequences.
//
// Every test stroke is matched, within a small index neighbourhood, to the
// model stroke of highest cosine similarity; the matched pairs contribute a
// normalized Euclidean distance. The pass runs in both directions and the
// result is averaged over all models.

#ifndef HQA_SD_DD_HPP_
#define HQA_SD_DD_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hqa/beta_elliptic.hpp"
#include "hqa/ink.hpp"

namespace hqa {

enum class Criterion { kShape, kDirection, kOrder, kKinematic, kPosition };

inline constexpr std::array<Criterion, 5> kAllCriteria = {
    Criterion::kShape, Criterion::kDirection, Criterion::kOrder,
    Criterion::kKinematic, Criterion::kPosition};

std::string_view to_string(Criterion criterion);
std::optional<Criterion> parse_criterion(std::string_view text);

// Stroke features followed by the stroke's zone histogram (upper, median,
// lower); the extra dims are used by the position criterion only.
inline constexpr std::size_t kCompareDim = kStrokeFeatureDim + 3;
enum ZoneFeature : std::size_t {
  kFeatUpper = kStrokeFeatureDim,
  kFeatMedian,
  kFeatLower,
};
using CompareVector = std::array<double, kCompareDim>;

struct StrokeSequence {
  std::vector<CompareVector> strokes;

  std::size_t size() const { return strokes.size(); }
  bool empty() const { return strokes.empty(); }
};

// Non-degenerate strokes of `bem`, zone fractions taken from the grid
// positions of each span against `guidelines` (same coordinates as the
// profile).
StrokeSequence stroke_sequence(const BemVector& bem, const VelocityProfile& vel,
                               const RefLines& guidelines);

struct SelectorVector {
  std::array<double, kCompareDim> weights{};
  Criterion criterion = Criterion::kShape;
  int radius = 1;  // matching neighbourhood

  static SelectorVector for_criterion(Criterion criterion);
  bool valid() const;
};

// Per-dimension centre and spread. Angular dims carry their period (pi for
// the axis inclination, 2 pi for the tangent) and use wrapped differences.
struct FeatureStats {
  std::array<double, kCompareDim> mean{};
  std::array<double, kCompareDim> std{};
  std::array<double, kCompareDim> period{};

  static constexpr double kStdFloor = 1e-6;

  static FeatureStats unit();
  static FeatureStats fit(std::span<const StrokeSequence> sequences);
  // Same centre; the spread is that of corresponding strokes (same index in
  // equal-length sequences), std_d = rms(u_d - v_d) / sqrt(2), floored at
  // `relative_floor` times the pooled spread. Falls back to the pooled spread
  // when no two sequences have equal length.
  static FeatureStats fit_matched(std::span<const StrokeSequence> sequences,
                                  double relative_floor = kMatchedFloor);

  static constexpr double kMatchedFloor = 0.05;
  double difference(std::size_t dim, double u, double v) const;
};

CompareVector select_features(const CompareVector& features,
                              const SelectorVector& selector);

// u.v / (|u| |v|), 0 if either is zero.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

// sqrt(sum_d (w_d (u_d - v_d) / std_d)^2) over dims with w_d != 0.
double normalized_distance(const CompareVector& u, const CompareVector& v,
                           const FeatureStats& stats,
                           const SelectorVector& selector);

// Directional pass: mean of matched distances of `from` against `to`, plus
// |n_from - n_to| times their median. `matches`, if given, receives the
// matched index per stroke of `from`.
double directional_distance(const StrokeSequence& from, const StrokeSequence& to,
                            const SelectorVector& selector,
                            const FeatureStats& stats,
                            std::vector<std::size_t>* matches = nullptr);

// Symmetric distance averaged over the models. Throws InputError for an empty
// model list or an empty sequence.
double sd_dd(const StrokeSequence& test, std::span<const StrokeSequence> models,
             const SelectorVector& selector, const FeatureStats& stats);

}  // namespace hqa

#endif  // HQA_SD_DD_HPP_
