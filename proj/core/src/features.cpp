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


#include "hqa/features.hpp"

#include <algorithm>
#include <cmath>

#include "hqa/errors.hpp"

namespace hqa {

void PipelineConfig::validate() const {
  if (!(preprocess.sample_rate > 0.0)) throw InputError("config: sample_rate must be > 0");
  if (!(u_max >= 0.0 && u_max <= 1.0)) throw InputError("config: u_max outside [0, 1]");
  if (!(u_min >= 0.0 && u_min <= 1.0)) throw InputError("config: u_min outside [0, 1]");
  if (!(shape_floor >= 0.0 && shape_floor <= 1.0)) {
    throw InputError("config: shape_floor outside [0, 1]");
  }
  const auto ids = shape_extractor_ids();
  if (std::find(ids.begin(), ids.end(), extractor_id) == ids.end()) {
    throw InputError("config: unknown extractor_id '" + extractor_id + "'");
  }
  if (model_count < 1) throw InputError("config: model_count must be >= 1");
  if (max_wrong_exemplars < 1) throw InputError("config: max_wrong_exemplars must be >= 1");
  if (port < 0 || port > 65535) throw InputError("config: port outside 0..65535");
}

SampleFeatures extract_features(const InkSample& sample, const PipelineConfig& config) {
  if (sample.empty()) throw InputError("empty ink sample");
  SampleFeatures f;
  Preprocessed pre = preprocess(sample, config.preprocess);
  f.warnings = std::move(pre.warnings);
  f.normalized = std::move(pre.sample);

  const double rate = config.preprocess.sample_rate;
  f.bem = bem_vector(f.normalized, rate);
  for (const auto& w : f.bem.warnings) f.warnings.push_back(w);
  const VelocityProfile vel = velocity_profile(f.normalized, rate);
  f.sequence = stroke_sequence(f.bem, vel, f.normalized.guidelines);
  if (f.sequence.empty()) f.warnings.push_back("no moving stroke found");

  f.fdm = fdm_features(fdm_coeffs(signature(f.normalized)));

  RasterOptions ink;
  f.shape_ink = shape_features(rasterize(f.normalized, ink), config.extractor_id).values;
  RasterOptions guide;
  guide.frame = RasterFrame::kGuidelines;
  f.shape_guide = shape_features(rasterize(f.normalized, guide), config.extractor_id).values;
  return f;
}

}  // namespace hqa
