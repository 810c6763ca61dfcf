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


#include "hqa/raster_shape.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "hqa/errors.hpp"

namespace hqa {
namespace {

constexpr double kInkLo = 2.5;
constexpr double kInkHi = 28.5;
constexpr double kCentre = 15.5;

struct Segment {
  double x0, y0, x1, y1;
};

double distance_sq(double px, double py, const Segment& s) {
  const double dx = s.x1 - s.x0;
  const double dy = s.y1 - s.y0;
  const double len2 = dx * dx + dy * dy;
  double f = 0.0;
  if (len2 > 0.0) f = std::clamp(((px - s.x0) * dx + (py - s.y0) * dy) / len2, 0.0, 1.0);
  const double ex = s.x0 + f * dx - px;
  const double ey = s.y0 + f * dy - py;
  return ex * ex + ey * ey;
}

std::vector<double> zone8(const Raster32& r) {
  std::vector<double> out;
  out.reserve(64);
  for (int br = 0; br < 8; ++br) {
    for (int bc = 0; bc < 8; ++bc) {
      double sum = 0.0;
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) sum += r.at(4 * br + i, 4 * bc + j);
      }
      out.push_back(sum / 16.0);
    }
  }
  return out;
}

struct Registered {
  std::size_t dim;
  ShapeExtractor fn;
};

struct Registry {
  std::mutex mu;
  std::map<std::string, Registered, std::less<>> extractors{
      {std::string(kDefaultExtractor), {64, zone8}}};
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Raster32 rasterize(const InkSample& sample, const RasterOptions& options) {
  BoundingBox box = bounding_box(sample);
  if (options.frame == RasterFrame::kGuidelines && sample.guidelines.valid()) {
    // Fixed window spanning the three zones, one band height above and below
    // the median band. Ink outside the window is clipped, so shifts relative
    // to the lines stay visible.
    const double band = sample.guidelines.baseline_y - sample.guidelines.median_top_y;
    box.min_y = sample.guidelines.median_top_y - band;
    box.max_y = sample.guidelines.baseline_y + band;
  }
  const double extent = std::max(box.width(), box.height());
  const double scale = extent > 0.0 ? (kInkHi - kInkLo) / extent : 0.0;
  const double cx = 0.5 * (box.min_x + box.max_x);
  const double cy = 0.5 * (box.min_y + box.max_y);
  auto map_x = [&](double x) { return kCentre + (x - cx) * scale; };
  auto map_y = [&](double y) { return kCentre + (y - cy) * scale; };

  std::vector<Segment> segments;
  for (const auto& stroke : sample.strokes) {
    const auto& pts = stroke.points;
    if (pts.size() == 1) {
      segments.push_back({map_x(pts[0].x), map_y(pts[0].y), map_x(pts[0].x), map_y(pts[0].y)});
    }
    for (std::size_t i = 1; i < pts.size(); ++i) {
      segments.push_back({map_x(pts[i - 1].x), map_y(pts[i - 1].y), map_x(pts[i].x),
                          map_y(pts[i].y)});
    }
  }

  const int ss = std::max(1, options.supersample);
  const int grid = kRasterSize * ss;
  const double sub = 1.0 / ss;
  const double r = options.pen_radius;
  std::vector<unsigned char> lit(static_cast<std::size_t>(grid * grid), 0);
  for (const auto& s : segments) {
    // Subpixel centres are at (k + 0.5) / ss.
    const auto lo = [&](double v) {
      return std::clamp(static_cast<int>(std::floor((v - r) * ss - 0.5)), 0, grid - 1);
    };
    const auto hi = [&](double v) {
      return std::clamp(static_cast<int>(std::ceil((v + r) * ss - 0.5)), 0, grid - 1);
    };
    const int gx0 = lo(std::min(s.x0, s.x1)), gx1 = hi(std::max(s.x0, s.x1));
    const int gy0 = lo(std::min(s.y0, s.y1)), gy1 = hi(std::max(s.y0, s.y1));
    for (int gy = gy0; gy <= gy1; ++gy) {
      for (int gx = gx0; gx <= gx1; ++gx) {
        auto& cell = lit[static_cast<std::size_t>(gy * grid + gx)];
        if (cell) continue;
        if (distance_sq((gx + 0.5) * sub, (gy + 0.5) * sub, s) <= r * r) cell = 1;
      }
    }
  }

  Raster32 raster;
  const double norm = 1.0 / (ss * ss);
  for (int gy = 0; gy < grid; ++gy) {
    for (int gx = 0; gx < grid; ++gx) {
      if (lit[static_cast<std::size_t>(gy * grid + gx)]) raster.at(gy / ss, gx / ss) += norm;
    }
  }
  for (double& p : raster.pixels) p = std::min(p, 1.0);
  return raster;
}

void register_shape_extractor(std::string id, std::size_t dim,
                              ShapeExtractor extractor) {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  reg.extractors[std::move(id)] = {dim, std::move(extractor)};
}

std::vector<std::string> shape_extractor_ids() {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  std::vector<std::string> ids;
  for (const auto& [id, _] : reg.extractors) ids.push_back(id);
  return ids;
}

ShapeFeatures shape_features(const Raster32& raster, std::string_view extractor_id) {
  Registered entry;
  {
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    const auto it = reg.extractors.find(extractor_id);
    if (it == reg.extractors.end()) {
      throw InputError("unknown shape extractor '" + std::string(extractor_id) + "'");
    }
    entry = it->second;
  }
  ShapeFeatures out{entry.fn(raster), std::string(extractor_id)};
  if (out.values.size() != entry.dim) {
    throw Error("extractor '" + out.extractor_id + "' returned the wrong length");
  }
  return out;
}

std::string to_pgm(const Raster32& raster) {
  std::ostringstream out;
  out << "P2\n" << kRasterSize << ' ' << kRasterSize << "\n255\n";
  for (int r = 0; r < kRasterSize; ++r) {
    for (int c = 0; c < kRasterSize; ++c) {
      out << (c ? " " : "")
          << static_cast<int>(std::lround(255.0 * std::clamp(raster.at(r, c), 0.0, 1.0)));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace hqa
