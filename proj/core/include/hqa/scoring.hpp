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


// Distance thresholds, normalized scores, engine fusion, global verdict and
// fuzzy qualitative grades.

#ifndef HQA_SCORING_HPP_
#define HQA_SCORING_HPP_

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "hqa/sd_dd.hpp"

namespace hqa {

inline constexpr double kDefaultUMax = 0.96;
inline constexpr double kDefaultUMin = 0.04;
inline constexpr double kDefaultShapeFloor = 0.5;

// Linear-interpolation quantile of the sorted sample (position u (n - 1)).
// Throws InputError for an empty sample or u outside [0, 1].
double quantile(std::span<const double> values, double u);

struct Thresholds {
  double t_cc = 0.0;  // certainly correct below
  double t_cw = 0.0;  // certainly wrong above

  bool valid() const;
};

// t_cc = min(Q_near(u_max), Q_far(u_min)), t_cw = the max of the two.
Thresholds compute_thresholds(std::span<const double> near,
                              std::span<const double> far,
                              double u_max = kDefaultUMax,
                              double u_min = kDefaultUMin);

// 1 below t_cc, 0 above t_cw, linear in between. A collapsed zone is a step
// that keeps 1 at dd == t_cc.
double ns1(double dd, const Thresholds& th);

// (ns1 + 1 - ns2) / 2.
double combined_score(double ns1, double ns2);

enum class Engine { kBem, kFdm, kShape };
inline constexpr std::size_t kEngineCount = 3;

std::string_view to_string(Engine engine);
std::optional<Engine> parse_engine(std::string_view text);

// Engines assigned to each criterion.
std::span<const Engine> engines_for(Criterion criterion);
bool engine_applies(Criterion criterion, Engine engine);

struct CriterionScores {
  std::array<double, 5> values{};

  double& operator[](Criterion c) { return values[static_cast<std::size_t>(c)]; }
  double operator[](Criterion c) const { return values[static_cast<std::size_t>(c)]; }
};

// Per criterion, per engine validation CCR. Unassigned engines stay zero.
struct FusionWeights {
  std::array<std::array<double, kEngineCount>, 5> w{};

  double get(Criterion c, Engine e) const {
    return w[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)];
  }
  void set(Criterion c, Engine e, double value) {
    w[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)] = value;
  }
  static FusionWeights uniform();
};

using EngineScores = std::array<std::optional<double>, kEngineCount>;

// Weighted mean over the assigned engines that supplied a score. If all their
// weights are zero the plain mean is used. Throws InputError when no assigned
// engine has a score.
double fuse(const EngineScores& scores, const FusionWeights& weights,
            Criterion criterion);

enum class VerdictClass {
  kCorrect = 1,
  kWrongShape = 2,
  kWrongOrder = 3,
  kWrongDirection = 4,
  kLineSurpass = 5,
  kIrregularKinematics = 6,
};

std::string_view to_string(VerdictClass verdict);

// A shape score below `shape_floor` is wrong shape outright; otherwise the
// argmax of {S_shape, 1 - S_direction, 1 - S_order, 1 - S_kinematic,
// 1 - S_position}, ties to the lower class index.
VerdictClass classify_global(const CriterionScores& scores,
                             double shape_floor = kDefaultShapeFloor);

enum class Grade { kVeryBad, kBad, kMedium, kWell, kVeryWell };

std::string_view to_string(Grade grade);

struct QualitativeLabel {
  Grade label1 = Grade::kMedium;
  Grade label2 = Grade::kMedium;
  double r1 = 1.0;
  double r2 = 0.0;
};

// Triangular sets peaking at 10, 30, 50, 70, 90 with half-width 20, saturated
// at both ends. label1 holds the larger membership (the lower grade on ties).
QualitativeLabel qualitative(double score_0_100);

// 1 - |predicted - expected|.
double accuracy(double predicted, double expected);

}  // namespace hqa

#endif  // HQA_SCORING_HPP_
