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

#include "hqa/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "hqa/errors.hpp"
#include "hqa/filter.hpp"

namespace hqa {
namespace {

InkPoint lerp(const InkPoint& a, const InkPoint& b, double t) {
  const double span = b.t - a.t;
  const double f = span > 0.0 ? (t - a.t) / span : 0.0;
  return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y), t};
}

PenStroke resample_stroke(const PenStroke& stroke, double rate,
                          std::size_t index) {
  const double duration = stroke.duration();
  if (stroke.points.size() < 2 || !(duration > 0.0)) {
    throw DegenerateInput("stroke " + std::to_string(index) +
                          " has zero duration");
  }
  const auto intervals = static_cast<std::size_t>(
      std::max(1.0, std::round(duration * rate)));
  const double step = duration / static_cast<double>(intervals);
  const double t0 = stroke.points.front().t;

  PenStroke out;
  out.points.reserve(intervals + 1);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < intervals; ++k) {
    const double t = t0 + static_cast<double>(k) * step;
    while (seg + 2 < stroke.points.size() && stroke.points[seg + 1].t <= t) {
      ++seg;
    }
    out.points.push_back(lerp(stroke.points[seg], stroke.points[seg + 1], t));
  }
  out.points.push_back(stroke.points.back());
  return out;
}

}  // namespace

InkSample resample_uniform(const InkSample& sample, double rate) {
  if (!(rate > 0.0)) throw InputError("resample rate must be positive");
  InkSample out = sample;
  for (std::size_t s = 0; s < sample.strokes.size(); ++s) {
    out.strokes[s] = resample_stroke(sample.strokes[s], rate, s);
  }
  return out;
}

LowpassResult lowpass(const InkSample& sample, double sample_rate,
                      const LowpassConfig& config) {
  const SosFilter filter = design_cheby2_lowpass(
      config.order, config.stopband_db, config.cutoff_hz, sample_rate);
  LowpassResult result{sample, {}};
  for (std::size_t s = 0; s < sample.strokes.size(); ++s) {
    const auto& pts = sample.strokes[s].points;
    if (pts.size() < filter.min_length()) {
      result.unfiltered_strokes.push_back(s);
      continue;
    }
    std::vector<double> xs(pts.size());
    std::vector<double> ys(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      xs[i] = pts[i].x;
      ys[i] = pts[i].y;
    }
    const auto fx = filtfilt(filter, xs);
    const auto fy = filtfilt(filter, ys);
    // Pin the endpoints by a linear ramp of the endpoint errors, so the
    // clamp introduces no step.
    const std::size_t n = pts.size();
    const double dx0 = xs.front() - fx.front();
    const double dy0 = ys.front() - fy.front();
    const double dx1 = xs.back() - fx.back();
    const double dy1 = ys.back() - fy.back();
    auto& out = result.sample.strokes[s].points;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(n - 1);
      out[i].x = fx[i] + (1.0 - f) * dx0 + f * dx1;
      out[i].y = fy[i] + (1.0 - f) * dy0 + f * dy1;
    }
  }
  return result;
}

InkSample normalize_size(const InkSample& sample, double target_height) {
  const BoundingBox box = bounding_box(sample);
  double scale = 0.0;
  if (box.height() > 0.0) {
    scale = target_height / box.height();
  } else if (box.width() > 0.0) {
    scale = target_height / box.width();
  } else {
    throw DegenerateInput("sample has zero width and zero height");
  }
  InkSample out = sample;
  for (auto& stroke : out.strokes) {
    for (auto& p : stroke.points) {
      p.x = (p.x - box.min_x) * scale;
      p.y = (p.y - box.min_y) * scale;
    }
  }
  out.guidelines.baseline_y = (sample.guidelines.baseline_y - box.min_y) * scale;
  out.guidelines.median_top_y =
      (sample.guidelines.median_top_y - box.min_y) * scale;
  return out;
}

VelocityProfile velocity_profile(const InkSample& sample, double rate) {
  if (!(rate > 0.0)) throw InputError("velocity rate must be positive");
  VelocityProfile prof;
  prof.dt = 1.0 / rate;
  if (sample.empty()) return prof;

  double t_first = 0.0;
  for (const auto& stroke : sample.strokes) {
    if (!stroke.points.empty()) {
      t_first = stroke.points.front().t;
      break;
    }
  }

  for (const auto& stroke : sample.strokes) {
    const auto& pts = stroke.points;
    if (pts.empty()) {
      prof.stroke_spans.push_back({prof.v.size(), prof.v.size()});
      continue;
    }
    const auto wanted = static_cast<std::size_t>(
        std::max(0.0, std::round((pts.front().t - t_first) * rate)));
    const std::size_t start = std::max(wanted, prof.v.size());
    const Point2 hold = prof.position.empty() ? Point2{pts.front().x, pts.front().y}
                                              : prof.position.back();
    while (prof.v.size() < start) {
      prof.v.push_back(0.0);
      prof.position.push_back(hold);
    }
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      double speed = 0.0;
      if (n >= 2) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
        const double dt = pts[hi].t - pts[lo].t;
        if (dt > 0.0) {
          speed = std::hypot(pts[hi].x - pts[lo].x, pts[hi].y - pts[lo].y) / dt;
        }
      }
      prof.v.push_back(speed);
      prof.position.push_back({pts[i].x, pts[i].y});
    }
    prof.stroke_spans.push_back({start, start + n});
  }

  prof.t.resize(prof.v.size());
  for (std::size_t g = 0; g < prof.t.size(); ++g) {
    prof.t[g] = t_first + static_cast<double>(g) * prof.dt;
  }
  return prof;
}

Preprocessed preprocess(const InkSample& sample,
                        const PreprocessConfig& config) {
  Preprocessed out;
  InkSample usable = sample;
  usable.strokes.clear();
  for (std::size_t s = 0; s < sample.strokes.size(); ++s) {
    const auto& stroke = sample.strokes[s];
    if (stroke.points.size() < 2 || !(stroke.duration() > 0.0)) {
      out.warnings.push_back("stroke " + std::to_string(s) +
                             " has fewer than two timed points; dropped");
      continue;
    }
    usable.strokes.push_back(stroke);
  }
  if (usable.strokes.empty()) {
    throw DegenerateInput("sample has no stroke with at least two points");
  }

  InkSample uniform = resample_uniform(usable, config.sample_rate);
  LowpassResult filtered = lowpass(uniform, config.sample_rate, config.lowpass);
  for (std::size_t s : filtered.unfiltered_strokes) {
    out.warnings.push_back("stroke " + std::to_string(s) +
                           " shorter than filter warm-up; left unfiltered");
  }
  out.sample = normalize_size(filtered.sample, config.target_height);
  return out;
}

}  // namespace hqa
