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

#include "hqa/beta_elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

namespace hqa {
namespace {

constexpr double kPi = std::numbers::pi;
// Extra grid samples on either side of a pen stroke that take part in its
// fit; the gap speed there is zero, which keeps pulse tails honest.
constexpr std::size_t kFitMargin = 10;
constexpr double kEndpointWeight = 10.0;
// Arcs flatter than this (sagitta / chord) use the chord construction.
constexpr double kFlatArcRatio = 0.02;
// Fitted ellipses larger than this multiple of the span extent are treated
// as near-collinear.
constexpr double kMaxAxisToExtent = 8.0;

double wrap_axis(double angle) {
  // (-pi/2, pi/2]
  while (angle <= -kPi / 2) angle += kPi;
  while (angle > kPi / 2) angle -= kPi;
  return angle;
}

double wrap_direction(double angle) {
  // (-pi, pi]
  while (angle <= -kPi) angle += 2 * kPi;
  while (angle > kPi) angle -= 2 * kPi;
  return angle;
}

constexpr int kParams = 5;

struct Bounds {
  double k_max = 1.0;
  double shape_min = 0.5;
  double shape_max = 10.0;
  double t_lo = 0.0;
  double t_hi = 1.0;
  double min_width = 0.02;
};

void project(BetaPulseParams& p, const Bounds& b) {
  p.k = std::clamp(p.k, 1e-9, b.k_max);
  p.p = std::clamp(p.p, b.shape_min, b.shape_max);
  p.q = std::clamp(p.q, b.shape_min, b.shape_max);
  p.t0 = std::clamp(p.t0, b.t_lo, b.t_hi - b.min_width);
  p.t1 = std::clamp(p.t1, p.t0 + b.min_width, b.t_hi);
}

// Partial derivatives of one pulse at time t, order (K, p, q, t0, t1).
void pulse_gradient(double t, const BetaPulseParams& bp, double* out) {
  std::fill(out, out + kParams, 0.0);
  if (t <= bp.t0 || t >= bp.t1) return;
  const double d = bp.t1 - bp.t0;
  const double tc = bp.tc();
  const double u = (t - bp.t0) / (tc - bp.t0);
  const double w = (bp.t1 - t) / (bp.t1 - tc);
  const double f = bp.k * std::pow(u, bp.p) * std::pow(w, bp.q);
  if (f == 0.0) return;
  out[0] = f / bp.k;
  out[1] = f * std::log(u);
  out[2] = f * std::log(w);
  out[3] = f * (-bp.p / (t - bp.t0) + (bp.p + bp.q) / d);
  out[4] = f * (bp.q / (bp.t1 - t) - (bp.p + bp.q) / d);
}

struct GroupFit {
  std::vector<BetaPulseParams> pulses;
  bool converged = true;
  int iterations = 0;
};

double group_cost(const std::vector<BetaPulseParams>& pulses,
                  std::span<const double> t, std::span<const double> v) {
  double cost = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double model = 0.0;
    for (const auto& bp : pulses) model += beta_pulse(t[i], bp);
    const double r = model - v[i];
    cost += r * r;
  }
  return cost;
}

GroupFit refit_group(std::vector<BetaPulseParams> init,
                     std::span<const double> t, std::span<const double> v,
                     const Bounds& bounds, const BetaFitOptions& opt) {
  GroupFit fit;
  fit.pulses = init;
  const std::size_t m = init.size();
  const auto np = static_cast<Eigen::Index>(m * kParams);
  const auto nr = static_cast<Eigen::Index>(t.size());
  if (m == 0 || nr == 0) return fit;

  double cost = group_cost(fit.pulses, t, v);
  double lambda = 1e-3;
  int small_steps = 0;
  bool done = cost <= 0.0;

  Eigen::MatrixXd jac(nr, np);
  Eigen::VectorXd res(nr);
  double grad[kParams];

  while (!done && fit.iterations < opt.max_iterations) {
    for (Eigen::Index i = 0; i < nr; ++i) {
      const double ti = t[static_cast<std::size_t>(i)];
      double model = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        model += beta_pulse(ti, fit.pulses[k]);
        pulse_gradient(ti, fit.pulses[k], grad);
        for (int j = 0; j < kParams; ++j) {
          jac(i, static_cast<Eigen::Index>(k * kParams + j)) = grad[j];
        }
      }
      res(i) = model - v[static_cast<std::size_t>(i)];
    }
    const Eigen::MatrixXd h = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * res;

    bool accepted = false;
    while (!accepted && fit.iterations < opt.max_iterations) {
      ++fit.iterations;
      Eigen::MatrixXd damped = h;
      for (Eigen::Index d = 0; d < np; ++d) {
        damped(d, d) += lambda * std::max(h(d, d), 1e-12);
      }
      const Eigen::VectorXd step = damped.ldlt().solve(-g);
      std::vector<BetaPulseParams> trial = fit.pulses;
      for (std::size_t k = 0; k < m; ++k) {
        const auto base = static_cast<Eigen::Index>(k * kParams);
        trial[k].k += step(base + 0);
        trial[k].p += step(base + 1);
        trial[k].q += step(base + 2);
        trial[k].t0 += step(base + 3);
        trial[k].t1 += step(base + 4);
        project(trial[k], bounds);
      }
      const double trial_cost = group_cost(trial, t, v);
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        const double rel =
            (std::sqrt(cost) - std::sqrt(trial_cost)) / std::sqrt(cost);
        fit.pulses = std::move(trial);
        cost = trial_cost;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        small_steps = rel < opt.relative_tolerance ? small_steps + 1 : 0;
        if (small_steps >= 2 || cost <= 1e-28 * static_cast<double>(nr)) {
          done = true;
        }
      } else {
        lambda *= 4.0;
        if (lambda > 1e12) {
          // No descent direction left: stationary point.
          done = true;
          break;
        }
      }
    }
  }
  // Out of iterations: keep the best parameters found so far.
  fit.converged = done;
  return fit;
}

Eigen::Vector2d to_vec(const Point2& p) { return {p.x, p.y}; }

EllipticArcParams chord_fallback(std::span<const Point2> pts) {
  EllipticArcParams arc;
  arc.degenerate = true;
  const Eigen::Vector2d a = to_vec(pts.front());
  const Eigen::Vector2d b = to_vec(pts.back());
  Eigen::Vector2d chord = b - a;
  double len = chord.norm();
  if (len < 1e-9) {
    // Closed or stationary: use the farthest point from the start.
    double best = 0.0;
    for (const auto& p : pts) {
      const double d = (to_vec(p) - a).norm();
      if (d > best) {
        best = d;
        chord = to_vec(p) - a;
      }
    }
    len = best;
  }
  double sagitta = 0.0;
  double rss = 0.0;
  if (len > 1e-9) {
    const Eigen::Vector2d dir = chord / len;
    for (const auto& p : pts) {
      const Eigen::Vector2d r = to_vec(p) - a;
      const double d = std::abs(r.x() * dir.y() - r.y() * dir.x());
      sagitta = std::max(sagitta, d);
      rss += d * d;
    }
  }
  arc.a = std::max(len / 2.0, kMinSemiAxis);
  arc.b = std::max(sagitta, kMinSemiAxis);
  arc.theta = len > 1e-9 ? wrap_axis(std::atan2(chord.y(), chord.x())) : 0.0;
  if (arc.b > arc.a) {
    std::swap(arc.a, arc.b);
    arc.theta = wrap_axis(arc.theta + kPi / 2);
  }
  arc.residual = std::sqrt(rss / static_cast<double>(pts.size()));
  return arc;
}

// Direct least-squares ellipse (numerically stable formulation) on
// normalized coordinates. Returns false when no ellipse exists.
bool direct_ellipse(std::span<const Point2> pts, EllipticArcParams& arc) {
  const std::size_t n = pts.size();
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += to_vec(p);
  mean /= static_cast<double>(n);
  double scale = 0.0;
  for (const auto& p : pts) scale += (to_vec(p) - mean).squaredNorm();
  scale = std::sqrt(scale / static_cast<double>(n));
  if (!(scale > 0.0)) return false;

  const auto rows = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd d1(rows, 3);
  Eigen::MatrixXd d2(rows, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d q = (to_vec(pts[i]) - mean) / scale;
    const double w = (i == 0 || i + 1 == n) ? std::sqrt(kEndpointWeight) : 1.0;
    const auto r = static_cast<Eigen::Index>(i);
    d1.row(r) << w * q.x() * q.x(), w * q.x() * q.y(), w * q.y() * q.y();
    d2.row(r) << w * q.x(), w * q.y(), w;
  }
  const Eigen::Matrix3d s1 = d1.transpose() * d1;
  const Eigen::Matrix3d s2 = d1.transpose() * d2;
  const Eigen::Matrix3d s3 = d2.transpose() * d2;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(s3);
  if (!lu.isInvertible()) return false;
  const Eigen::Matrix3d tmat = -lu.inverse() * s2.transpose();
  const Eigen::Matrix3d mmat = s1 + s2 * tmat;
  Eigen::Matrix3d reduced;
  reduced.row(0) = mmat.row(2) / 2.0;
  reduced.row(1) = -mmat.row(1);
  reduced.row(2) = mmat.row(0) / 2.0;

  Eigen::EigenSolver<Eigen::Matrix3d> eig(reduced);
  int pick = -1;
  double best = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d v = eig.eigenvectors().col(k).real();
    const double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
    if (cond > best) {
      best = cond;
      pick = k;
    }
  }
  if (pick < 0) return false;
  const Eigen::Vector3d quad = eig.eigenvectors().col(pick).real();
  const Eigen::Vector3d lin = tmat * quad;
  const double A = quad(0), B = quad(1), C = quad(2);
  const double D = lin(0), E = lin(1), F = lin(2);

  const double den = B * B - 4.0 * A * C;
  if (!(den < 0.0)) return false;
  const double x0 = (2.0 * C * D - B * E) / den;
  const double y0 = (2.0 * A * E - B * D) / den;
  const double f0 = A * x0 * x0 + B * x0 * y0 + C * y0 * y0 + D * x0 + E * y0 + F;

  Eigen::Matrix2d quad_form;
  quad_form << A, B / 2.0, B / 2.0, C;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> axes(quad_form);
  const double l_small = axes.eigenvalues()(0);
  const double l_big = axes.eigenvalues()(1);
  const double r_major = -f0 / l_small;
  const double r_minor = -f0 / l_big;
  if (!(r_major > 0.0) || !(r_minor > 0.0)) return false;

  const Eigen::Vector2d major_dir = axes.eigenvectors().col(0);
  arc.a = std::sqrt(r_major) * scale;
  arc.b = std::sqrt(r_minor) * scale;
  arc.theta = wrap_axis(std::atan2(major_dir.y(), major_dir.x()));
  if (arc.b > arc.a) {
    std::swap(arc.a, arc.b);
    arc.theta = wrap_axis(arc.theta + kPi / 2);
  }

  // Sampson distance, back in original units.
  double rss = 0.0;
  for (const auto& p : pts) {
    const Eigen::Vector2d q = (to_vec(p) - mean) / scale;
    const double val = A * q.x() * q.x() + B * q.x() * q.y() +
                       C * q.y() * q.y() + D * q.x() + E * q.y() + F;
    const double gx = 2 * A * q.x() + B * q.y() + D;
    const double gy = B * q.x() + 2 * C * q.y() + E;
    const double gn = std::hypot(gx, gy);
    const double dist = gn > 0 ? val / gn : 0.0;
    rss += dist * dist;
  }
  arc.residual = std::sqrt(rss / static_cast<double>(n)) * scale;
  return std::isfinite(arc.a) && std::isfinite(arc.b);
}

double slow_end_tangent(std::span<const Point2> pts, SlowEnd end) {
  const std::size_t n = pts.size();
  if (n < 2) return 0.0;
  if (end == SlowEnd::kStart) {
    for (std::size_t i = 1; i < n; ++i) {
      const double dx = pts[i].x - pts[0].x;
      const double dy = pts[i].y - pts[0].y;
      if (std::hypot(dx, dy) > 1e-12) return wrap_direction(std::atan2(dy, dx));
    }
  } else {
    for (std::size_t i = n - 1; i-- > 0;) {
      const double dx = pts[n - 1].x - pts[i].x;
      const double dy = pts[n - 1].y - pts[i].y;
      if (std::hypot(dx, dy) > 1e-12) return wrap_direction(std::atan2(dy, dx));
    }
  }
  return 0.0;
}

}  // namespace

double beta_pulse(double t, const BetaPulseParams& params) {
  if (!(t >= params.t0 && t <= params.t1)) return 0.0;
  const double tc = params.tc();
  const double u = (t - params.t0) / (tc - params.t0);
  const double w = (params.t1 - t) / (params.t1 - tc);
  return params.k * std::pow(u, params.p) * std::pow(w, params.q);
}

std::vector<double> superpose(std::span<const BetaPulseParams> pulses,
                              std::span<const double> times) {
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (const auto& bp : pulses) {
      if (bp.k > 0.0) out[i] += beta_pulse(times[i], bp);
    }
  }
  return out;
}

StrokeFeatureVector stroke_features(const BetaStroke& stroke) {
  const double tc = stroke.dyn.tc();
  return {stroke.dyn.k,       stroke.dyn.p,       stroke.dyn.q,
          tc - stroke.dyn.t0, stroke.dyn.t1 - tc, stroke.geo.a,
          stroke.geo.b,       stroke.geo.theta,   stroke.geo.theta_p};
}

std::vector<SegmentSpan> segment_strokes(const VelocityProfile& vel) {
  std::vector<SegmentSpan> spans;
  const auto& v = vel.v;
  for (std::size_t s = 0; s < vel.stroke_spans.size(); ++s) {
    const IndexRange range = vel.stroke_spans[s];
    if (range.size() == 0) continue;
    const double peak = *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(range.begin),
                                          v.begin() + static_cast<std::ptrdiff_t>(range.end));
    if (!(peak > 0.0)) {
      spans.push_back({range, s, true});
      continue;
    }
    std::vector<std::size_t> cuts{range.begin};
    std::size_t i = range.begin + 1;
    while (i + 1 < range.end) {
      if (v[i] < v[i - 1]) {
        std::size_t j = i;
        while (j + 1 < range.end && v[j + 1] == v[i]) ++j;
        if (j + 1 < range.end && v[j + 1] > v[i]) cuts.push_back(i);
        i = j + 1;
      } else {
        ++i;
      }
    }
    cuts.push_back(range.end);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      SegmentSpan span{{cuts[k], cuts[k + 1]}, s, false};
      double local = 0.0;
      for (std::size_t g = span.range.begin; g < span.range.end; ++g) {
        local = std::max(local, v[g]);
      }
      span.degenerate = !(local > 0.0);
      spans.push_back(span);
    }
  }
  return spans;
}

BetaFit fit_beta_pulses(const VelocityProfile& vel,
                        std::span<const SegmentSpan> spans,
                        const BetaFitOptions& options) {
  BetaFit result;
  result.pulses.resize(spans.size());
  result.degenerate.resize(spans.size(), false);
  if (vel.empty()) return result;

  const double vmax = *std::max_element(vel.v.begin(), vel.v.end());
  const std::size_t grid = vel.size();

  std::size_t first = 0;
  while (first < spans.size()) {
    std::size_t last = first;
    while (last < spans.size() &&
           spans[last].pen_stroke == spans[first].pen_stroke) {
      ++last;
    }
    const IndexRange stroke = vel.stroke_spans[spans[first].pen_stroke];

    std::vector<BetaPulseParams> init;
    std::vector<std::size_t> owner;
    for (std::size_t k = first; k < last; ++k) {
      const SegmentSpan& sp = spans[k];
      if (sp.degenerate) {
        result.degenerate[k] = true;
        result.pulses[k] = {0.0, 2.0, 2.0, vel.t[sp.range.begin],
                            vel.t[sp.range.begin] + vel.dt};
        continue;
      }
      BetaPulseParams bp;
      bp.t0 = vel.t[sp.range.begin];
      bp.t1 = vel.t[std::min(sp.range.end, stroke.end - 1)];
      if (bp.t1 - bp.t0 < 2.0 * vel.dt) bp.t1 = bp.t0 + 2.0 * vel.dt;
      for (std::size_t g = sp.range.begin; g < sp.range.end; ++g) {
        bp.k = std::max(bp.k, vel.v[g]);
      }
      bp.p = 2.0;
      bp.q = 2.0;
      init.push_back(bp);
      owner.push_back(k);
    }

    if (!init.empty()) {
      const std::size_t lo = stroke.begin >= kFitMargin ? stroke.begin - kFitMargin : 0;
      const std::size_t hi = std::min(grid, stroke.end + kFitMargin);
      Bounds bounds;
      bounds.k_max = options.max_amplitude_factor * vmax;
      bounds.shape_min = options.min_shape;
      bounds.shape_max = options.max_shape;
      bounds.t_lo = vel.t[lo] - vel.dt;
      bounds.t_hi = vel.t[hi - 1] + vel.dt;
      bounds.min_width = 2.0 * vel.dt;
      for (auto& bp : init) project(bp, bounds);

      const std::span<const double> t(vel.t.data() + lo, hi - lo);
      const std::span<const double> v(vel.v.data() + lo, hi - lo);
      GroupFit gf = refit_group(init, t, v, bounds, options);
      result.iterations += gf.iterations;
      result.converged = result.converged && gf.converged;
      for (std::size_t k = 0; k < owner.size(); ++k) {
        result.pulses[owner[k]] = gf.pulses[k];
      }
    }
    first = last;
  }

  const auto model = superpose(result.pulses, vel.t);
  double rss = 0.0;
  for (std::size_t g = 0; g < grid; ++g) {
    const double r = model[g] - vel.v[g];
    rss += r * r;
  }
  result.rmse = std::sqrt(rss / static_cast<double>(grid));
  return result;
}

EllipticArcParams fit_elliptic_arc(std::span<const Point2> points,
                                   SlowEnd slow_end) {
  EllipticArcParams arc;
  if (points.empty()) {
    arc.degenerate = true;
    arc.a = arc.b = kMinSemiAxis;
    return arc;
  }
  const EllipticArcParams chord = chord_fallback(points);
  bool use_chord = points.size() < 5 || chord.b <= kMinSemiAxis ||
                   chord.b < kFlatArcRatio * (2.0 * chord.a);
  if (!use_chord) {
    use_chord = !direct_ellipse(points, arc);
    if (!use_chord) {
      // Extent: largest distance from the first point.
      double extent = 0.0;
      for (const auto& p : points) {
        extent = std::max(extent, std::hypot(p.x - points.front().x,
                                             p.y - points.front().y));
      }
      use_chord = arc.a > kMaxAxisToExtent * std::max(extent, kMinSemiAxis);
    }
  }
  if (use_chord) arc = chord;
  arc.theta_p = slow_end_tangent(points, slow_end);
  return arc;
}

BemVector bem_vector(const InkSample& preprocessed, double sample_rate,
                     const BetaFitOptions& options) {
  BemVector bem;
  const VelocityProfile vel = velocity_profile(preprocessed, sample_rate);
  const std::vector<SegmentSpan> spans = segment_strokes(vel);
  const BetaFit fit = fit_beta_pulses(vel, spans, options);
  bem.converged = fit.converged;
  bem.rmse = fit.rmse;
  if (!fit.converged) {
    bem.warnings.push_back("beta pulse fit did not converge; best estimates kept");
  }

  for (std::size_t k = 0; k < spans.size(); ++k) {
    const SegmentSpan& sp = spans[k];
    const IndexRange stroke = vel.stroke_spans[sp.pen_stroke];
    const std::size_t last = std::min(sp.range.end, stroke.end - 1);
    std::vector<Point2> pts(vel.position.begin() + static_cast<std::ptrdiff_t>(sp.range.begin),
                            vel.position.begin() + static_cast<std::ptrdiff_t>(last + 1));
    const SlowEnd slow =
        vel.v[sp.range.begin] <= vel.v[last] ? SlowEnd::kStart : SlowEnd::kEnd;

    BetaStroke bs;
    bs.dyn = fit.pulses[k];
    bs.geo = fit_elliptic_arc(pts, slow);
    bs.span = sp.range;
    bs.degenerate = fit.degenerate[k];
    bs.start = {vel.position[sp.range.begin].x, vel.position[sp.range.begin].y,
                vel.t[sp.range.begin]};
    bs.end = {vel.position[last].x, vel.position[last].y, vel.t[last]};
    bem.strokes.push_back(bs);
  }
  return bem;
}

}  // namespace hqa
