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


// Sample analysis against a template set, and corpus evaluation.

#ifndef HQA_PIPELINE_HPP_
#define HQA_PIPELINE_HPP_

#include <array>
#include <string>
#include <vector>

#include "hqa/corpus_synth.hpp"
#include "hqa/scoring.hpp"
#include "hqa/templates.hpp"

namespace hqa {

struct Verdict {
  std::string target;
  VerdictClass verdict = VerdictClass::kCorrect;
  CriterionScores scores;  // [0, 100]
  std::array<QualitativeLabel, 5> qualitative{};
  std::array<EngineScores, 5> engines{};  // [0, 1], per criterion
  std::vector<std::string> warnings;
  std::vector<Criterion> not_assessed;

  int class_index() const { return static_cast<int>(verdict); }
};

// Throws InputError for an empty sample or a target without a template.
Verdict analyze(const InkSample& sample, const TemplateSet& templates);
Verdict analyze(const SampleFeatures& features, const PreparedTemplate& tpl);

// Analysis report document (ordered keys, stable number formatting).
std::string report_json(const Verdict& verdict);

struct EvalResult {
  int samples = 0;
  int class_hits = 0;
  std::array<int, 5> criterion_hits{};
  std::array<int, 5> criterion_total{};
  double accuracy_sum = 0.0;  // score agreement with the 0/1 truth
  int accuracy_count = 0;
  std::array<std::array<int, 6>, 6> confusion{};  // [truth - 1][predicted - 1]

  double global_accuracy() const;
  double ccr(Criterion c) const;
  double mean_accuracy() const;
};

// Analyzes every test-split entry. A criterion counts as predicted correct
// when its fused score is >= 50. Criteria the template does not assess are
// skipped in the CCR counts.
EvalResult evaluate(const Corpus& corpus, const TemplateSet& templates);

std::string format_eval(const EvalResult& result);

}  // namespace hqa

#endif  // HQA_PIPELINE_HPP_
