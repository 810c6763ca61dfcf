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


#include "hqa/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hqa/errors.hpp"

namespace hqa {
namespace {

constexpr std::array<Engine, 3> kShapeEngines = {Engine::kBem, Engine::kFdm, Engine::kShape};
constexpr std::array<Engine, 2> kDirectionEngines = {Engine::kBem, Engine::kFdm};
constexpr std::array<Engine, 2> kOrderEngines = {Engine::kBem, Engine::kFdm};
constexpr std::array<Engine, 1> kKinematicEngines = {Engine::kBem};
constexpr std::array<Engine, 2> kPositionEngines = {Engine::kBem, Engine::kShape};

constexpr std::array<std::string_view, kEngineCount> kEngineNames = {"bem", "fdm", "shape"};
constexpr std::array<std::string_view, 5> kGradeNames = {"VB", "B", "M", "W", "VW"};

}  // namespace

double quantile(std::span<const double> values, double u) {
  if (values.empty()) throw InputError("quantile of an empty distribution");
  if (!(u >= 0.0 && u <= 1.0)) throw InputError("quantile probability outside [0, 1]");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  const double pos = u * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return s[lo] + frac * (s[hi] - s[lo]);
}

bool Thresholds::valid() const {
  return std::isfinite(t_cc) && std::isfinite(t_cw) && t_cc <= t_cw;
}

Thresholds compute_thresholds(std::span<const double> near, std::span<const double> far,
                              double u_max, double u_min) {
  const double qn = quantile(near, u_max);
  const double qf = quantile(far, u_min);
  return {std::min(qn, qf), std::max(qn, qf)};
}

double ns1(double dd, const Thresholds& th) {
  if (dd <= th.t_cc) return 1.0;
  if (dd >= th.t_cw) return 0.0;
  return (th.t_cw - dd) / (th.t_cw - th.t_cc);
}

double combined_score(double ns1, double ns2) { return 0.5 * (ns1 + (1.0 - ns2)); }

std::string_view to_string(Engine engine) {
  return kEngineNames[static_cast<std::size_t>(engine)];
}

std::optional<Engine> parse_engine(std::string_view text) {
  for (std::size_t i = 0; i < kEngineCount; ++i) {
    if (kEngineNames[i] == text) return static_cast<Engine>(i);
  }
  return std::nullopt;
}

std::span<const Engine> engines_for(Criterion criterion) {
  switch (criterion) {
    case Criterion::kShape: return kShapeEngines;
    case Criterion::kDirection: return kDirectionEngines;
    case Criterion::kOrder: return kOrderEngines;
    case Criterion::kKinematic: return kKinematicEngines;
    case Criterion::kPosition: return kPositionEngines;
  }
  return {};
}

bool engine_applies(Criterion criterion, Engine engine) {
  const auto engines = engines_for(criterion);
  return std::find(engines.begin(), engines.end(), engine) != engines.end();
}

FusionWeights FusionWeights::uniform() {
  FusionWeights f;
  for (Criterion c : kAllCriteria) {
    for (Engine e : engines_for(c)) f.set(c, e, 1.0);
  }
  return f;
}

double fuse(const EngineScores& scores, const FusionWeights& weights, Criterion criterion) {
  double num = 0.0, den = 0.0, plain = 0.0;
  int count = 0;
  for (Engine e : engines_for(criterion)) {
    const auto& s = scores[static_cast<std::size_t>(e)];
    if (!s) continue;
    const double w = std::max(weights.get(criterion, e), 0.0);
    num += w * *s;
    den += w;
    plain += *s;
    ++count;
  }
  if (count == 0) throw InputError("fuse: no engine score for " + std::string(to_string(criterion)));
  return den > 0.0 ? num / den : plain / count;
}

std::string_view to_string(VerdictClass verdict) {
  switch (verdict) {
    case VerdictClass::kCorrect: return "correct";
    case VerdictClass::kWrongShape: return "wrong_shape";
    case VerdictClass::kWrongOrder: return "wrong_order";
    case VerdictClass::kWrongDirection: return "wrong_direction";
    case VerdictClass::kLineSurpass: return "line_surpass";
    case VerdictClass::kIrregularKinematics: return "irregular_kinematics";
  }
  return "correct";
}

VerdictClass classify_global(const CriterionScores& scores, double shape_floor) {
  if (scores[Criterion::kShape] < shape_floor) return VerdictClass::kWrongShape;
  const std::array<double, 5> operands = {
      scores[Criterion::kShape], 1.0 - scores[Criterion::kDirection],
      1.0 - scores[Criterion::kOrder], 1.0 - scores[Criterion::kKinematic],
      1.0 - scores[Criterion::kPosition]};
  constexpr std::array<VerdictClass, 5> kMap = {
      VerdictClass::kCorrect, VerdictClass::kWrongDirection, VerdictClass::kWrongOrder,
      VerdictClass::kIrregularKinematics, VerdictClass::kLineSurpass};
  std::size_t m = 0;
  for (std::size_t i = 1; i < operands.size(); ++i) {
    const double best = operands[m];
    if (operands[i] > best ||
        (operands[i] == best && static_cast<int>(kMap[i]) < static_cast<int>(kMap[m]))) {
      m = i;
    }
  }
  return kMap[m];
}

std::string_view to_string(Grade grade) { return kGradeNames[static_cast<std::size_t>(grade)]; }

QualitativeLabel qualitative(double score) {
  score = std::clamp(score, 10.0, 90.0);
  std::array<double, 5> mu{};
  for (std::size_t g = 0; g < 5; ++g) {
    const double peak = 10.0 + 20.0 * static_cast<double>(g);
    mu[g] = std::max(0.0, 1.0 - std::abs(score - peak) / 20.0);
  }
  std::size_t first = 0;
  for (std::size_t g = 1; g < 5; ++g) {
    if (mu[g] > mu[first]) first = g;
  }
  std::size_t second = first;
  double r2 = 0.0;
  for (std::size_t g : {first - 1, first + 1}) {
    if (g < 5 && mu[g] > r2) {
      second = g;
      r2 = mu[g];
    }
  }
  const double total = mu[first] + r2;
  QualitativeLabel q;
  q.label1 = static_cast<Grade>(first);
  q.label2 = static_cast<Grade>(second);
  q.r1 = mu[first] / total;
  q.r2 = 1.0 - q.r1;
  return q;
}

double accuracy(double predicted, double expected) {
  return 1.0 - std::abs(predicted - expected);
}

}  // namespace hqa
