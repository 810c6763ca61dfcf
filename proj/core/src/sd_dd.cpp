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


#include "hqa/sd_dd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hqa/errors.hpp"

namespace hqa {
namespace {

constexpr std::array<std::pair<Criterion, std::string_view>, 5> kNames = {{
    {Criterion::kShape, "shape"},
    {Criterion::kDirection, "direction"},
    {Criterion::kOrder, "order"},
    {Criterion::kKinematic, "kinematic"},
    {Criterion::kPosition, "position"},
}};

double wrap(double d, double period) {
  if (period <= 0.0) return d;
  return d - period * std::round(d / period);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Centred, scaled and weighted copy used for similarity detection.
CompareVector zscore(const CompareVector& u, const FeatureStats& stats,
                     const SelectorVector& selector) {
  CompareVector z{};
  for (std::size_t d = 0; d < kCompareDim; ++d) {
    if (selector.weights[d] == 0.0) continue;
    z[d] = selector.weights[d] * stats.difference(d, u[d], stats.mean[d]) / stats.std[d];
  }
  return z;
}

}  // namespace

std::string_view to_string(Criterion criterion) {
  for (const auto& [c, name] : kNames) {
    if (c == criterion) return name;
  }
  return "shape";
}

std::optional<Criterion> parse_criterion(std::string_view text) {
  for (const auto& [c, name] : kNames) {
    if (name == text) return c;
  }
  return std::nullopt;
}

StrokeSequence stroke_sequence(const BemVector& bem, const VelocityProfile& vel,
                               const RefLines& guidelines) {
  StrokeSequence seq;
  for (const auto& stroke : bem.strokes) {
    if (stroke.degenerate) continue;
    CompareVector v{};
    const auto f = stroke_features(stroke);
    std::copy(f.begin(), f.end(), v.begin());
    std::vector<InkPoint> pts;
    for (std::size_t g = stroke.span.begin; g < stroke.span.end && g < vel.size(); ++g) {
      pts.push_back({vel.position[g].x, vel.position[g].y, vel.t[g]});
    }
    const ZoneHistogram h = zone_histogram(pts, guidelines);
    v[kFeatUpper] = h.upper;
    v[kFeatMedian] = h.median;
    v[kFeatLower] = h.lower;
    seq.strokes.push_back(v);
  }
  return seq;
}

SelectorVector SelectorVector::for_criterion(Criterion criterion) {
  SelectorVector s;
  s.criterion = criterion;
  auto on = [&](std::initializer_list<std::size_t> dims) {
    for (std::size_t d : dims) s.weights[d] = 1.0;
  };
  switch (criterion) {
    case Criterion::kShape:
      on({kFeatA, kFeatB, kFeatTheta, kFeatThetaP});
      break;
    case Criterion::kDirection:
      on({kFeatTheta, kFeatThetaP});
      break;
    case Criterion::kOrder:
      on({kFeatK, kFeatP, kFeatQ, kFeatRise, kFeatFall, kFeatA, kFeatB, kFeatTheta,
          kFeatThetaP});
      s.radius = 0;
      break;
    case Criterion::kKinematic:
      on({kFeatK, kFeatP, kFeatQ, kFeatRise, kFeatFall});
      break;
    case Criterion::kPosition:
      on({kFeatA, kFeatB, kFeatTheta, kFeatThetaP, kFeatUpper, kFeatMedian, kFeatLower});
      break;
  }
  return s;
}

bool SelectorVector::valid() const {
  bool any = false;
  for (double w : weights) {
    if (w < 0.0 || w > 1.0 || !std::isfinite(w)) return false;
    any = any || w > 0.0;
  }
  return any && radius >= 0;
}

FeatureStats FeatureStats::unit() {
  FeatureStats s;
  s.std.fill(1.0);
  return s;
}

FeatureStats FeatureStats::fit(std::span<const StrokeSequence> sequences) {
  FeatureStats s = unit();
  s.period[kFeatTheta] = std::numbers::pi;
  s.period[kFeatThetaP] = 2.0 * std::numbers::pi;
  std::vector<const CompareVector*> all;
  for (const auto& seq : sequences) {
    for (const auto& v : seq.strokes) all.push_back(&v);
  }
  if (all.empty()) return s;
  const double n = static_cast<double>(all.size());
  for (std::size_t d = 0; d < kCompareDim; ++d) {
    const double period = s.period[d];
    if (period > 0.0) {
      // Circular mean on the doubled (or plain) angle.
      const double k = 2.0 * std::numbers::pi / period;
      double sx = 0.0, sy = 0.0;
      for (const auto* v : all) {
        sx += std::cos(k * (*v)[d]);
        sy += std::sin(k * (*v)[d]);
      }
      s.mean[d] = std::atan2(sy, sx) / k;
    } else {
      double m = 0.0;
      for (const auto* v : all) m += (*v)[d];
      s.mean[d] = m / n;
    }
    double var = 0.0;
    for (const auto* v : all) {
      const double diff = s.difference(d, (*v)[d], s.mean[d]);
      var += diff * diff;
    }
    s.std[d] = std::max(std::sqrt(var / n), kStdFloor);
  }
  return s;
}

FeatureStats FeatureStats::fit_matched(std::span<const StrokeSequence> sequences,
                                       double relative_floor) {
  FeatureStats s = fit(sequences);
  std::array<double, kCompareDim> sum{};
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    for (std::size_t j = i + 1; j < sequences.size(); ++j) {
      const auto& a = sequences[i].strokes;
      const auto& b = sequences[j].strokes;
      if (a.empty() || a.size() != b.size()) continue;
      for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t d = 0; d < kCompareDim; ++d) {
          const double diff = s.difference(d, a[k][d], b[k][d]);
          sum[d] += diff * diff;
        }
        ++pairs;
      }
    }
  }
  if (pairs == 0) return s;
  for (std::size_t d = 0; d < kCompareDim; ++d) {
    const double spread = std::sqrt(sum[d] / static_cast<double>(pairs) / 2.0);
    s.std[d] = std::max({spread, relative_floor * s.std[d], kStdFloor});
  }
  return s;
}

double FeatureStats::difference(std::size_t dim, double u, double v) const {
  return wrap(u - v, period[dim]);
}

CompareVector select_features(const CompareVector& features,
                              const SelectorVector& selector) {
  CompareVector out{};
  for (std::size_t d = 0; d < kCompareDim; ++d) out[d] = features[d] * selector.weights[d];
  return out;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  double dot = 0.0, nu = 0.0, nv = 0.0;
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t d = 0; d < n; ++d) {
    dot += u[d] * v[d];
    nu += u[d] * u[d];
    nv += v[d] * v[d];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double normalized_distance(const CompareVector& u, const CompareVector& v,
                           const FeatureStats& stats,
                           const SelectorVector& selector) {
  double sum = 0.0;
  for (std::size_t d = 0; d < kCompareDim; ++d) {
    const double w = selector.weights[d];
    if (w == 0.0) continue;
    const double z = w * stats.difference(d, u[d], v[d]) / std::max(stats.std[d], FeatureStats::kStdFloor);
    sum += z * z;
  }
  return std::sqrt(sum);
}

double directional_distance(const StrokeSequence& from, const StrokeSequence& to,
                            const SelectorVector& selector,
                            const FeatureStats& stats,
                            std::vector<std::size_t>* matches) {
  if (from.empty() || to.empty()) throw InputError("sd-dd: empty stroke sequence");
  const auto last = static_cast<long>(to.size()) - 1;
  std::vector<CompareVector> to_z;
  to_z.reserve(to.size());
  for (const auto& v : to.strokes) to_z.push_back(zscore(v, stats, selector));

  std::vector<double> dd;
  dd.reserve(from.size());
  if (matches) matches->clear();
  for (std::size_t i = 0; i < from.size(); ++i) {
    const CompareVector zi = zscore(from.strokes[i], stats, selector);
    const auto centre = static_cast<long>(i);
    // Nearest offsets first, so ties keep the closest index.
    std::size_t best = static_cast<std::size_t>(std::clamp(centre, 0L, last));
    double best_sim = cosine_similarity(zi, to_z[best]);
    for (long off = 1; off <= selector.radius; ++off) {
      for (long cand : {centre - off, centre + off}) {
        const auto j = static_cast<std::size_t>(std::clamp(cand, 0L, last));
        const double sim = cosine_similarity(zi, to_z[j]);
        if (sim > best_sim) {
          best_sim = sim;
          best = j;
        }
      }
    }
    if (matches) matches->push_back(best);
    dd.push_back(normalized_distance(from.strokes[i], to.strokes[best], stats, selector));
  }
  double mean = 0.0;
  for (double d : dd) mean += d;
  mean /= static_cast<double>(dd.size());
  const double gap = std::abs(static_cast<double>(from.size()) - static_cast<double>(to.size()));
  return mean + gap * median(dd);
}

double sd_dd(const StrokeSequence& test, std::span<const StrokeSequence> models,
             const SelectorVector& selector, const FeatureStats& stats) {
  if (models.empty()) throw InputError("sd-dd: no model samples");
  double total = 0.0;
  for (const auto& model : models) {
    total += 0.5 * (directional_distance(test, model, selector, stats) +
                    directional_distance(model, test, selector, stats));
  }
  return total / static_cast<double>(models.size());
}

}  // namespace hqa
