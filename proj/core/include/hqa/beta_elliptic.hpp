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

// Beta-elliptic trajectory model.
//
// The curvilinear speed of a pen trajectory is segmented at its local minima
// into elementary strokes. Each stroke gets a beta velocity pulse
//
//   v(t) = K ((t - t0)/(tc - t0))^p ((t1 - t)/(t1 - tc))^q,  t in [t0, t1]
//   tc   = (p t1 + q t0) / (p + q)
//
// fitted jointly with its neighbours (pulses overlap), and an elliptic arc
// (semi-axes a >= b, major-axis inclination theta, oriented tangent theta_p
// at the slower endpoint) fitted to the stroke's points.

#ifndef HQA_BETA_ELLIPTIC_HPP_
#define HQA_BETA_ELLIPTIC_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hqa/ink.hpp"
#include "hqa/preprocess.hpp"

namespace hqa {

struct BetaPulseParams {
  double k = 0.0;  // amplitude, speed units
  double p = 2.0;
  double q = 2.0;
  double t0 = 0.0;
  double t1 = 1.0;

  double tc() const { return (p * t1 + q * t0) / (p + q); }
  bool valid() const { return k > 0.0 && p > 0.0 && q > 0.0 && t0 < t1; }
};

// Zero outside [t0, t1].
double beta_pulse(double t, const BetaPulseParams& params);

struct EllipticArcParams {
  double a = 0.0;        // semi-major axis
  double b = 0.0;        // semi-minor axis
  double theta = 0.0;    // major-axis inclination, (-pi/2, pi/2]
  double theta_p = 0.0;  // tangent inclination at the slow endpoint, (-pi, pi]
  bool degenerate = false;
  double residual = 0.0;  // RMS algebraic-distance proxy of the fit
};

struct BetaStroke {
  BetaPulseParams dyn;
  EllipticArcParams geo;
  IndexRange span;  // in the velocity grid
  InkPoint start;
  InkPoint end;
  bool degenerate = false;  // zero-speed span; excluded from comparison
};

struct BemVector {
  std::vector<BetaStroke> strokes;
  bool converged = true;
  double rmse = 0.0;
  std::vector<std::string> warnings;

  std::size_t n() const { return strokes.size(); }
};

// Semi-axis floor for near-collinear spans.
inline constexpr double kMinSemiAxis = 1e-3;

// Per-stroke comparison layout.
inline constexpr std::size_t kStrokeFeatureDim = 9;
enum StrokeFeature : std::size_t {
  kFeatK = 0,
  kFeatP,
  kFeatQ,
  kFeatRise,  // tc - t0
  kFeatFall,  // t1 - tc
  kFeatA,
  kFeatB,
  kFeatTheta,
  kFeatThetaP,
};
using StrokeFeatureVector = std::array<double, kStrokeFeatureDim>;

StrokeFeatureVector stroke_features(const BetaStroke& stroke);

// One span per elementary stroke: pen strokes are cut at interior local
// minima of v. A minimum is the first index of a run of equal values whose
// left neighbour is larger and whose right neighbour (after the run) is
// larger or equal. A pen stroke whose speed is identically zero yields a
// single span.
struct SegmentSpan {
  IndexRange range;
  std::size_t pen_stroke = 0;
  bool degenerate = false;
};
std::vector<SegmentSpan> segment_strokes(const VelocityProfile& vel);

struct BetaFitOptions {
  int max_iterations = 2000;
  double relative_tolerance = 1e-4;
  double min_shape = 0.5;
  double max_shape = 10.0;
  double max_amplitude_factor = 3.0;  // K <= factor * max v
};

struct BetaFit {
  std::vector<BetaPulseParams> pulses;  // k == 0 for degenerate spans
  std::vector<bool> degenerate;
  bool converged = true;
  int iterations = 0;
  double rmse = 0.0;  // over the whole grid, all pulses superposed
};

// Damped least-squares fit of the pulse superposition to v. Pulses of one pen
// stroke are refit jointly; if a group hits the iteration cap it keeps the
// best parameters found and the fit is flagged unconverged.
BetaFit fit_beta_pulses(const VelocityProfile& vel,
                        std::span<const SegmentSpan> spans,
                        const BetaFitOptions& options = {});

// Sum of all pulses at each grid time.
std::vector<double> superpose(std::span<const BetaPulseParams> pulses,
                              std::span<const double> times);

enum class SlowEnd { kStart, kEnd };

// Endpoint-weighted direct least-squares ellipse. Near-collinear or
// non-elliptic point sets fall back to a = half chord, b = max(sagitta,
// kMinSemiAxis), theta = chord inclination.
EllipticArcParams fit_elliptic_arc(std::span<const Point2> points,
                                   SlowEnd slow_end);

// velocity_profile -> segment_strokes -> fit_beta_pulses + fit_elliptic_arc.
BemVector bem_vector(const InkSample& preprocessed,
                     double sample_rate = kDefaultSampleRate,
                     const BetaFitOptions& options = {});

}  // namespace hqa

#endif  // HQA_BETA_ELLIPTIC_HPP_
