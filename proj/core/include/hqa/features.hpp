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


// Per-sample feature extraction shared by template fitting and analysis.

#ifndef HQA_FEATURES_HPP_
#define HQA_FEATURES_HPP_

#include <string>
#include <vector>

#include "hqa/beta_elliptic.hpp"
#include "hqa/fourier_descriptor.hpp"
#include "hqa/ink.hpp"
#include "hqa/preprocess.hpp"
#include "hqa/raster_shape.hpp"
#include "hqa/scoring.hpp"
#include "hqa/sd_dd.hpp"
#include "hqa/svm.hpp"

namespace hqa {

enum class WeightSource { kValidation, kUniform };

struct PipelineConfig {
  PreprocessConfig preprocess;
  double u_max = kDefaultUMax;
  double u_min = kDefaultUMin;
  double shape_floor = kDefaultShapeFloor;
  std::string extractor_id{kDefaultExtractor};
  WeightSource weights = WeightSource::kValidation;
  int model_count = 3;
  int max_wrong_exemplars = 12;
  SvmParams svm;
  int port = 8080;

  // Throws InputError naming the first bad field.
  void validate() const;
};

struct SampleFeatures {
  InkSample normalized;
  BemVector bem;
  StrokeSequence sequence;
  std::vector<double> fdm;          // fdm_features of the whole-sample signature
  std::vector<double> shape_ink;    // raster in the ink frame
  std::vector<double> shape_guide;  // raster in the guideline frame
  std::vector<std::string> warnings;
};

// preprocess -> BEM + stroke sequence, FDM descriptor, both rasters. Throws
// InputError for an empty sample.
SampleFeatures extract_features(const InkSample& sample, const PipelineConfig& config);

}  // namespace hqa

#endif  // HQA_FEATURES_HPP_
