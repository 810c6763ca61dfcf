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


#include "hqa/fourier_descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hqa/errors.hpp"

namespace hqa {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PathPiece {
  Point2 from;
  Point2 to;
  bool jump = false;
  double start = 0.0;  // cumulative length at `from`
  double length = 0.0;
};

Point2 point_at(const std::vector<PathPiece>& path, double s, std::size_t& cursor) {
  while (cursor + 1 < path.size() && path[cursor].start + path[cursor].length < s) {
    ++cursor;
  }
  const PathPiece& p = path[cursor];
  const double f = p.length > 0.0 ? std::clamp((s - p.start) / p.length, 0.0, 1.0) : 0.0;
  return {p.from.x + f * (p.to.x - p.from.x), p.from.y + f * (p.to.y - p.from.y)};
}

// Length of [lo, hi] covered by pen-up pieces.
double jump_overlap(const std::vector<PathPiece>& path, double lo, double hi) {
  double covered = 0.0;
  for (const auto& p : path) {
    if (!p.jump) continue;
    const double a = std::max(lo, p.start);
    const double b = std::min(hi, p.start + p.length);
    if (b > a) covered += b - a;
  }
  return covered;
}

Signature build_signature(const std::vector<PathPiece>& path, double total,
                          std::size_t segments) {
  if (segments < 16) throw InputError("signature needs at least 16 segments");
  bool any_ink = false;
  for (const auto& p : path) any_ink = any_ink || (!p.jump && p.length > 0.0);
  if (!(total > 0.0) || !any_ink) {
    throw DegenerateInput("trajectory has zero length");
  }

  const double step = total / static_cast<double>(segments);
  std::vector<Point2> m(segments + 1);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i <= segments; ++i) {
    m[i] = point_at(path, std::min(total, step * static_cast<double>(i)), cursor);
  }
  m.back() = path.back().to;

  Signature sig;
  sig.ell.resize(segments);
  sig.theta.resize(segments);
  sig.dl.assign(segments, kTwoPi / static_cast<double>(segments));
  std::vector<bool> held(segments, false);
  for (std::size_t i = 0; i < segments; ++i) {
    sig.ell[i] = kTwoPi * static_cast<double>(i + 1) / static_cast<double>(segments);
    const double lo = step * static_cast<double>(i);
    held[i] = jump_overlap(path, lo, lo + step) > 0.5 * step;
    const double dx = m[i + 1].x - m[i].x;
    const double dy = m[i + 1].y - m[i].y;
    if (std::hypot(dx, dy) <= 1e-12 * total) held[i] = true;
    if (!held[i]) sig.theta[i] = std::atan2(dy, dx);
  }
  // Held segments take the previous inclination; leading ones the first
  // pen-down inclination.
  std::size_t first = 0;
  while (first < segments && held[first]) ++first;
  for (std::size_t i = 0; i < first; ++i) sig.theta[i] = sig.theta[first];
  for (std::size_t i = first + 1; i < segments; ++i) {
    if (held[i]) {
      sig.theta[i] = sig.theta[i - 1];
      continue;
    }
    double d = sig.theta[i] - sig.theta[i - 1];
    while (d > std::numbers::pi) d -= kTwoPi;
    while (d < -std::numbers::pi) d += kTwoPi;
    sig.theta[i] = sig.theta[i - 1] + d;
  }
  return sig;
}

void append(std::vector<PathPiece>& path, double& total, Point2 from, Point2 to,
            bool jump) {
  const double len = std::hypot(to.x - from.x, to.y - from.y);
  if (len <= 0.0) return;
  path.push_back({from, to, jump, total, len});
  total += len;
}

}  // namespace

std::array<double, FdmVector::kDim> FdmVector::flat() const {
  std::array<double, kDim> out{};
  out[0] = a0;
  for (int j = 0; j < kFdmHarmonics; ++j) {
    out[static_cast<std::size_t>(1 + j)] = a[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(1 + kFdmHarmonics + j)] = b[static_cast<std::size_t>(j)];
  }
  return out;
}

Signature signature(std::span<const Point2> polyline, std::size_t segments) {
  std::vector<PathPiece> path;
  double total = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    append(path, total, polyline[i - 1], polyline[i], false);
  }
  if (path.empty()) throw DegenerateInput("trajectory has zero length");
  return build_signature(path, total, segments);
}

Signature signature(const InkSample& sample, std::size_t segments) {
  std::vector<PathPiece> path;
  double total = 0.0;
  bool have_last = false;
  Point2 last;
  for (const auto& stroke : sample.strokes) {
    if (stroke.points.empty()) continue;
    const Point2 head{stroke.points.front().x, stroke.points.front().y};
    if (have_last) append(path, total, last, head, true);
    for (std::size_t i = 1; i < stroke.points.size(); ++i) {
      append(path, total, {stroke.points[i - 1].x, stroke.points[i - 1].y},
             {stroke.points[i].x, stroke.points[i].y}, false);
    }
    last = {stroke.points.back().x, stroke.points.back().y};
    have_last = true;
  }
  if (path.empty()) throw DegenerateInput("trajectory has zero length");
  return build_signature(path, total, segments);
}

FdmVector fdm_coeffs(const Signature& sig, int harmonics) {
  FdmVector out;
  const int cap = std::clamp(harmonics, 0, kFdmHarmonics);
  double total = 0.0;
  for (std::size_t i = 0; i < sig.size(); ++i) total += sig.dl[i];
  // The abscissa is re-derived from dl so any total length maps to 2 pi.
  const double norm = total > 0.0 ? kTwoPi / total : 1.0;
  double ell = 0.0;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const double dl = sig.dl[i] * norm;
    ell += dl;
    out.a0 += sig.theta[i] * dl;
    for (int j = 1; j <= cap; ++j) {
      const double arg = j * ell;
      out.a[static_cast<std::size_t>(j - 1)] += sig.theta[i] * std::cos(arg) * dl;
      out.b[static_cast<std::size_t>(j - 1)] += sig.theta[i] * std::sin(arg) * dl;
    }
  }
  out.a0 /= kTwoPi;
  for (int j = 0; j < cap; ++j) {
    out.a[static_cast<std::size_t>(j)] /= std::numbers::pi;
    out.b[static_cast<std::size_t>(j)] /= std::numbers::pi;
  }
  return out;
}

std::vector<double> reconstruct(const FdmVector& coeffs,
                                std::span<const double> ell, int harmonics) {
  const int cap = std::clamp(harmonics, 0, kFdmHarmonics);
  std::vector<double> out(ell.size(), coeffs.a0);
  for (std::size_t i = 0; i < ell.size(); ++i) {
    for (int j = 1; j <= cap; ++j) {
      out[i] += coeffs.a[static_cast<std::size_t>(j - 1)] * std::cos(j * ell[i]) +
                coeffs.b[static_cast<std::size_t>(j - 1)] * std::sin(j * ell[i]);
    }
  }
  return out;
}

std::vector<double> fdm_features(const FdmVector& coeffs) {
  std::vector<double> out;
  out.reserve(kFdmFeatureDim);
  out.push_back(std::cos(coeffs.a0));
  out.push_back(std::sin(coeffs.a0));
  out.insert(out.end(), coeffs.a.begin(), coeffs.a.end());
  out.insert(out.end(), coeffs.b.begin(), coeffs.b.end());
  return out;
}

}  // namespace hqa
