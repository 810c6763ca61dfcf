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


#include "hqa/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hqa/errors.hpp"
#include "json_codec.hpp"

namespace hqa {
namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

Verdict analyze(const SampleFeatures& f, const PreparedTemplate& tpl) {
  const Template& t = tpl.data();
  Verdict v;
  v.target = t.target;
  v.warnings = f.warnings;
  CriterionScores unit;
  for (Criterion c : kAllCriteria) {
    const auto i = static_cast<std::size_t>(c);
    if (!t[c].assessed) {
      v.not_assessed.push_back(c);
      unit[c] = 1.0;
    } else {
      v.engines[i] = engine_scores(tpl, f, c);
      unit[c] = std::clamp(fuse(v.engines[i], t.weights, c), 0.0, 1.0);
    }
    v.scores[c] = round2(100.0 * unit[c]);
    v.qualitative[i] = qualitative(v.scores[c]);
  }
  v.verdict = classify_global(unit, t.config.shape_floor);
  return v;
}

Verdict analyze(const InkSample& sample, const TemplateSet& templates) {
  const PreparedTemplate* tpl = templates.find(sample.meta.target);
  if (!tpl) throw InputError("no template for target '" + sample.meta.target + "'");
  return analyze(extract_features(sample, tpl->data().config), *tpl);
}

std::string report_json(const Verdict& v) {
  using internal::Json;
  Json scores = Json::object(), qual = Json::object();
  for (Criterion c : kAllCriteria) {
    const std::string name(to_string(c));
    scores[name] = v.scores[c];
    const QualitativeLabel& q = v.qualitative[static_cast<std::size_t>(c)];
    Json labels = Json::array({std::string(to_string(q.label1))});
    Json rates = Json::array({round2(q.r1)});
    if (q.r2 > 0.0) {
      labels.push_back(std::string(to_string(q.label2)));
      rates.push_back(round2(1.0 - round2(q.r1)));
    }
    qual[name] = {{"labels", labels}, {"rates", rates}};
  }
  Json not_assessed = Json::array();
  for (Criterion c : v.not_assessed) not_assessed.push_back(std::string(to_string(c)));
  const Json doc = {{"target", v.target},
                    {"class_index", v.class_index()},
                    {"class_label", std::string(to_string(v.verdict))},
                    {"scores", scores},
                    {"qualitative", qual},
                    {"not_assessed", not_assessed},
                    {"warnings", v.warnings}};
  return doc.dump(2) + "\n";
}

double EvalResult::global_accuracy() const {
  return samples ? static_cast<double>(class_hits) / samples : 0.0;
}

double EvalResult::ccr(Criterion c) const {
  const auto i = static_cast<std::size_t>(c);
  return criterion_total[i] ? static_cast<double>(criterion_hits[i]) / criterion_total[i] : 0.0;
}

double EvalResult::mean_accuracy() const {
  return accuracy_count ? accuracy_sum / accuracy_count : 0.0;
}

EvalResult evaluate(const Corpus& corpus, const TemplateSet& templates) {
  EvalResult r;
  for (const auto& e : corpus.entries) {
    if (e.split != "test") continue;
    const PreparedTemplate* tpl = templates.find(e.target);
    if (!tpl) throw InputError("no template for target '" + e.target + "'");
    const Verdict v = analyze(extract_features(e.sample, tpl->data().config), *tpl);
    ++r.samples;
    r.class_hits += v.class_index() == e.class_index ? 1 : 0;
    ++r.confusion[e.class_index - 1][v.class_index() - 1];
    for (Criterion c : kAllCriteria) {
      if (!tpl->data()[c].assessed) continue;
      const auto i = static_cast<std::size_t>(c);
      const bool truth = e.criteria[i];
      ++r.criterion_total[i];
      r.criterion_hits[i] += ((v.scores[c] >= 50.0) == truth) ? 1 : 0;
      r.accuracy_sum += accuracy(v.scores[c] / 100.0, truth ? 1.0 : 0.0);
      ++r.accuracy_count;
    }
  }
  return r;
}

std::string format_eval(const EvalResult& r) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "samples            %d\n", r.samples);
  out += line;
  std::snprintf(line, sizeof line, "global accuracy    %.4f\n", r.global_accuracy());
  out += line;
  out += "criterion          ccr      n\n";
  for (Criterion c : kAllCriteria) {
    const auto i = static_cast<std::size_t>(c);
    std::snprintf(line, sizeof line, "  %-16s %.4f  %d\n", std::string(to_string(c)).c_str(),
                  r.ccr(c), r.criterion_total[i]);
    out += line;
  }
  std::snprintf(line, sizeof line, "mean accuracy      %.4f\n", r.mean_accuracy());
  out += line;
  out += "confusion (rows truth 1..6, cols predicted 1..6)\n";
  for (const auto& row : r.confusion) {
    out += " ";
    for (int n : row) {
      std::snprintf(line, sizeof line, " %4d", n);
      out += line;
    }
    out += "\n";
  }
  return out;
}

}  // namespace hqa
