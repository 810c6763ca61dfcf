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


// Offline view of the ink: a 32x32 coverage raster and pluggable feature
// extractors over it.

#ifndef HQA_RASTER_SHAPE_HPP_
#define HQA_RASTER_SHAPE_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hqa/ink.hpp"

namespace hqa {

inline constexpr int kRasterSize = 32;

// Row-major intensities in [0, 1]; row 0 is the top.
struct Raster32 {
  std::array<double, kRasterSize * kRasterSize> pixels{};

  double at(int row, int col) const { return pixels[index(row, col)]; }
  double& at(int row, int col) { return pixels[index(row, col)]; }

 private:
  static std::size_t index(int row, int col) {
    return static_cast<std::size_t>(row * kRasterSize + col);
  }
};

enum class RasterFrame {
  kInk,         // fitted to the ink bounding box
  kGuidelines,  // vertical window fixed to the three writing zones
};

struct RasterOptions {
  RasterFrame frame = RasterFrame::kInk;
  int supersample = 4;      // subpixels per pixel side
  double pen_radius = 0.5;  // pixels
};

// The fitted box is scaled uniformly into [2.5, 28.5] (pixel c spans
// [c, c+1)) and centred on 15.5; the short side is letterboxed. A subpixel
// is inked when its centre lies within pen_radius of any stroke polyline.
// Throws DegenerateInput for a sample without points.
Raster32 rasterize(const InkSample& sample, const RasterOptions& options = {});

struct ShapeFeatures {
  std::vector<double> values;
  std::string extractor_id;
};

inline constexpr std::string_view kDefaultExtractor = "zone8";

using ShapeExtractor = std::function<std::vector<double>(const Raster32&)>;

// Registers (or replaces) an extractor. Thread-safe.
void register_shape_extractor(std::string id, std::size_t dim,
                              ShapeExtractor extractor);
std::vector<std::string> shape_extractor_ids();

// "zone8": mean of each 4x4 pixel block, 64 values, row-major blocks.
// Throws InputError for an unknown id.
ShapeFeatures shape_features(const Raster32& raster,
                             std::string_view extractor_id = kDefaultExtractor);

// Plain PGM ("P2"), maxval 255.
std::string to_pgm(const Raster32& raster);

}  // namespace hqa

#endif  // HQA_RASTER_SHAPE_HPP_
