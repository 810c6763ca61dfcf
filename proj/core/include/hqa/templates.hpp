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


// Per-target template: reference models, wrong exemplars, feature statistics,
// distance thresholds, per-criterion classifiers and fusion weights.

#ifndef HQA_TEMPLATES_HPP_
#define HQA_TEMPLATES_HPP_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hqa/corpus_synth.hpp"
#include "hqa/features.hpp"

namespace hqa {

inline constexpr int kTemplateVersion = 1;

struct WrongExemplar {
  Criterion error_criterion = Criterion::kShape;
  InkSample sample;
};

struct CriterionModel {
  bool assessed = false;  // false when no wrong training data existed
  Thresholds near;        // distance to the models
  Thresholds far;         // distance to this criterion's wrong exemplars
  std::optional<SvmModel> fdm;
  std::optional<SvmModel> shape;
};

struct Template {
  std::string target;
  Script script = Script::kLatinChar;
  RefLines guidelines;
  std::vector<InkSample> models;
  std::vector<WrongExemplar> wrong_exemplars;
  FeatureStats stats;
  std::array<CriterionModel, 5> criteria;
  FusionWeights weights;
  PipelineConfig config;

  CriterionModel& operator[](Criterion c) { return criteria[static_cast<std::size_t>(c)]; }
  const CriterionModel& operator[](Criterion c) const {
    return criteria[static_cast<std::size_t>(c)];
  }
};

// Template with the stroke sequences of its models and wrong exemplars
// extracted once.
class PreparedTemplate {
 public:
  explicit PreparedTemplate(Template t);

  const Template& data() const { return data_; }
  const std::vector<StrokeSequence>& model_sequences() const { return models_; }
  const std::vector<StrokeSequence>& wrong_sequences(Criterion c) const {
    return wrong_[static_cast<std::size_t>(c)];
  }

 private:
  Template data_;
  std::vector<StrokeSequence> models_;
  std::array<std::vector<StrokeSequence>, 5> wrong_;
};

// Engine scores in [0, 1] for one criterion; engines that do not serve the
// criterion, or lack a trained machine, stay empty. BEM is
// combined_score(ns1 to the models, ns1 to the wrong exemplars); FDM and
// SHAPE are classifier confidences of "criterion satisfied".
EngineScores engine_scores(const PreparedTemplate& tpl, const SampleFeatures& features,
                           Criterion criterion);

// SD-DD of `features` against the models, and against the closest wrong exemplar of
// `criterion` (nullopt when the criterion has none or the sample has no
// moving stroke).
std::optional<double> model_distance(const PreparedTemplate& tpl, const SampleFeatures& f,
                                     Criterion criterion);
std::optional<double> wrong_distance(const PreparedTemplate& tpl, const SampleFeatures& f,
                                     Criterion criterion);

struct FitReport {
  std::string target;
  // Validation CCR per criterion and engine (the fusion weights).
  FusionWeights ccr;
  std::array<int, 5> validation_counts{};
  std::vector<std::string> validation_paths;  // corpus paths of the validation half
};

// Builds one template per target from the train split. The first
// `model_count` correct samples become the models; the remaining samples are
// split alternately into a fit half (thresholds, classifiers) and a
// validation half (fusion weights). Throws InputError when a target has fewer
// correct samples than models.
std::vector<Template> fit_templates(const Corpus& corpus, const PipelineConfig& config,
                                    std::vector<FitReport>* reports = nullptr);

std::string template_to_json(const Template& t);
Template template_from_json(std::string_view document);

class TemplateSet {
 public:
  TemplateSet() = default;
  explicit TemplateSet(std::vector<Template> templates);

  // One <target>.json per template.
  static TemplateSet load(const std::filesystem::path& dir);
  void save(const std::filesystem::path& dir) const;

  const PreparedTemplate* find(std::string_view target) const;
  std::vector<std::string> targets() const;
  std::size_t size() const { return templates_.size(); }

 private:
  std::map<std::string, PreparedTemplate, std::less<>> templates_;
};

}  // namespace hqa

#endif  // HQA_TEMPLATES_HPP_
