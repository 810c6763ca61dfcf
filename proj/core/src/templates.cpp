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


#include "hqa/templates.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hqa/errors.hpp"
#include "hqa/ink_io.hpp"
#include "json_codec.hpp"

namespace hqa {
namespace {

using internal::Json;

constexpr std::string_view kWhat = "template";

std::size_t idx(Criterion c) { return static_cast<std::size_t>(c); }
std::size_t idx(Engine e) { return static_cast<std::size_t>(e); }

const std::vector<double>& shape_input(const SampleFeatures& f, Criterion c) {
  return c == Criterion::kPosition ? f.shape_guide : f.shape_ink;
}

std::optional<double> distance_to(const StrokeSequence& seq,
                                  const std::vector<StrokeSequence>& refs,
                                  const FeatureStats& stats, Criterion c) {
  if (seq.empty()) return std::nullopt;
  std::vector<StrokeSequence> usable;
  for (const auto& r : refs) {
    if (!r.empty()) usable.push_back(r);
  }
  if (usable.empty()) return std::nullopt;
  return sd_dd(seq, usable, SelectorVector::for_criterion(c), stats);
}

// Distance to the closest single reference.
std::optional<double> nearest_distance(const StrokeSequence& seq,
                                       const std::vector<StrokeSequence>& refs,
                                       const FeatureStats& stats, Criterion c) {
  std::optional<double> best;
  for (const auto& r : refs) {
    const auto d = distance_to(seq, {r}, stats, c);
    if (d && (!best || *d < *best)) best = d;
  }
  return best;
}

// Leave-one-out distance of refs[i] to the other references.
std::optional<double> loo_distance(std::size_t i, const std::vector<StrokeSequence>& refs,
                                   const FeatureStats& stats, Criterion c) {
  std::vector<StrokeSequence> others;
  for (std::size_t j = 0; j < refs.size(); ++j) {
    if (j != i) others.push_back(refs[j]);
  }
  return distance_to(refs[i], others, stats, c);
}

Json thresholds_json(const Thresholds& th) { return {{"t_cc", th.t_cc}, {"t_cw", th.t_cw}}; }

Thresholds thresholds_from(const Json& j) {
  Thresholds th{internal::require_number(j, "t_cc", kWhat),
                internal::require_number(j, "t_cw", kWhat)};
  if (!th.valid()) throw FormatError("template: thresholds need t_cc <= t_cw");
  return th;
}

Json svm_json(const SvmModel& m) {
  return {{"support_vectors", m.support_vectors},
          {"alphas", m.alphas},
          {"bias", m.bias},
          {"gamma", m.gamma},
          {"c", m.c},
          {"platt_a", m.platt_a},
          {"platt_b", m.platt_b},
          {"mean", m.standardizer.mean},
          {"scale", m.standardizer.scale}};
}

SvmModel svm_from(const Json& j) {
  SvmModel m;
  const Json& sv = internal::require(j, "support_vectors", kWhat);
  if (!sv.is_array()) throw FormatError("template: support_vectors must be an array");
  for (const auto& row : sv) m.support_vectors.push_back(internal::number_array(row, kWhat));
  m.alphas = internal::number_array(internal::require(j, "alphas", kWhat), kWhat);
  m.bias = internal::require_number(j, "bias", kWhat);
  m.gamma = internal::require_number(j, "gamma", kWhat);
  m.c = internal::require_number(j, "c", kWhat);
  m.platt_a = internal::require_number(j, "platt_a", kWhat);
  m.platt_b = internal::require_number(j, "platt_b", kWhat);
  m.standardizer.mean = internal::number_array(internal::require(j, "mean", kWhat), kWhat);
  m.standardizer.scale = internal::number_array(internal::require(j, "scale", kWhat), kWhat);
  if (m.alphas.size() != m.support_vectors.size()) {
    throw FormatError("template: alphas and support_vectors differ in length");
  }
  const std::size_t dim = m.standardizer.mean.size();
  if (m.standardizer.scale.size() != dim) throw FormatError("template: bad standardizer");
  for (const auto& row : m.support_vectors) {
    if (dim != 0 && row.size() != dim) throw FormatError("template: support vector dimension");
  }
  return m;
}

template <std::size_t N>
std::array<double, N> fixed_array(const Json& j, std::string_view what) {
  const auto v = internal::number_array(j, what);
  if (v.size() != N) throw FormatError(std::string(what) + ": wrong length");
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

Criterion criterion_from(const Json& j) {
  if (!j.is_string()) throw FormatError("template: criterion must be a string");
  const auto c = parse_criterion(j.get<std::string>());
  if (!c) throw FormatError("template: unknown criterion '" + j.get<std::string>() + "'");
  return *c;
}

void check_target_name(const std::string& target) {
  if (target.empty() || target.find_first_of("/\\") != std::string::npos || target == "." ||
      target == "..") {
    throw InputError("invalid target name '" + target + "'");
  }
}

struct Item {
  const CorpusEntry* entry;
  SampleFeatures features;
};

}  // namespace

PreparedTemplate::PreparedTemplate(Template t) : data_(std::move(t)) {
  for (const auto& m : data_.models) {
    models_.push_back(extract_features(m, data_.config).sequence);
  }
  for (const auto& w : data_.wrong_exemplars) {
    wrong_[idx(w.error_criterion)].push_back(extract_features(w.sample, data_.config).sequence);
  }
}

std::optional<double> model_distance(const PreparedTemplate& tpl, const SampleFeatures& f,
                                     Criterion criterion) {
  return distance_to(f.sequence, tpl.model_sequences(), tpl.data().stats, criterion);
}

std::optional<double> wrong_distance(const PreparedTemplate& tpl, const SampleFeatures& f,
                                     Criterion criterion) {
  return nearest_distance(f.sequence, tpl.wrong_sequences(criterion), tpl.data().stats,
                          criterion);
}

EngineScores engine_scores(const PreparedTemplate& tpl, const SampleFeatures& f,
                           Criterion c) {
  EngineScores s{};
  const CriterionModel& cm = tpl.data()[c];
  const auto dm = model_distance(tpl, f, c);
  if (!dm) {
    s[idx(Engine::kBem)] = 0.0;
  } else {
    const auto dw = wrong_distance(tpl, f, c);
    s[idx(Engine::kBem)] = combined_score(ns1(*dm, cm.near), dw ? ns1(*dw, cm.far) : 0.0);
  }
  if (engine_applies(c, Engine::kFdm) && cm.fdm) {
    s[idx(Engine::kFdm)] = confidence(*cm.fdm, f.fdm);
  }
  if (engine_applies(c, Engine::kShape) && cm.shape) {
    s[idx(Engine::kShape)] = confidence(*cm.shape, shape_input(f, c));
  }
  return s;
}

std::vector<Template> fit_templates(const Corpus& corpus, const PipelineConfig& config,
                                    std::vector<FitReport>* reports) {
  config.validate();
  std::map<std::string, std::vector<const CorpusEntry*>> by_target;
  for (const auto& e : corpus.entries) {
    if (e.split == "train") by_target[e.target].push_back(&e);
  }
  if (by_target.empty()) throw InputError("corpus has no train samples");
  const auto n_models = static_cast<std::size_t>(config.model_count);

  std::vector<Template> out;
  for (const auto& [target, entries] : by_target) {
    check_target_name(target);
    std::vector<Item> models, fit, val;
    std::map<std::string, int> seen;  // per category alternation
    for (const CorpusEntry* e : entries) {
      const bool correct = !e->mode && e->class_index == 1;
      Item item{e, extract_features(e->sample, config)};
      if (correct && models.size() < n_models) {
        models.push_back(std::move(item));
        continue;
      }
      const std::string key = e->mode ? std::string(to_string(*e->mode)) : "correct";
      ((seen[key]++ % 2 == 0) ? fit : val).push_back(std::move(item));
    }
    if (models.size() < n_models) {
      throw InputError("target '" + target + "': " + std::to_string(models.size()) +
                       " correct train samples, need " + std::to_string(n_models) + " models");
    }

    Template t;
    t.target = target;
    t.script = models.front().entry->sample.meta.script;
    t.guidelines = models.front().entry->sample.guidelines;
    t.config = config;
    std::vector<StrokeSequence> correct_seqs, model_seqs;
    for (const auto& m : models) {
      t.models.push_back(m.entry->sample);
      model_seqs.push_back(m.features.sequence);
      correct_seqs.push_back(m.features.sequence);
    }
    for (const auto* half : {&fit, &val}) {
      for (const auto& it : *half) {
        if (!it.entry->mode) correct_seqs.push_back(it.features.sequence);
      }
    }
    t.stats = FeatureStats::fit_matched(correct_seqs);

    for (Criterion c : kAllCriteria) {
      CriterionModel& cm = t[c];
      std::vector<const Item*> wrong_fit;
      for (const auto& it : fit) {
        if (it.entry->error_criterion() == c) wrong_fit.push_back(&it);
      }
      std::vector<double> dd_correct;
      for (std::size_t i = 0; i < model_seqs.size(); ++i) {
        if (auto d = loo_distance(i, model_seqs, t.stats, c)) dd_correct.push_back(*d);
      }
      for (const auto& it : fit) {
        if (it.entry->mode) continue;
        if (auto d = distance_to(it.features.sequence, model_seqs, t.stats, c)) {
          dd_correct.push_back(*d);
        }
      }
      if (dd_correct.empty()) dd_correct.push_back(0.0);
      if (wrong_fit.empty()) {
        const double q = quantile(dd_correct, config.u_max);
        cm.near = {q, q};
        continue;
      }
      cm.assessed = true;

      std::vector<double> dd_wrong;
      std::vector<std::pair<const Item*, double>> scored;
      for (const Item* it : wrong_fit) {
        if (auto d = distance_to(it->features.sequence, model_seqs, t.stats, c)) {
          dd_wrong.push_back(*d);
          scored.emplace_back(it, *d);
        }
      }
      if (dd_wrong.empty()) dd_wrong.push_back(dd_correct.back());
      cm.near = compute_thresholds(dd_correct, dd_wrong, config.u_max, config.u_min);

      // Exemplars come from the wrong samples the model distance rejects
      // outright; subtler errors overlap the correct class and would pull
      // correct samples toward it.
      std::vector<const Item*> pool;
      for (const auto& [it, d] : scored) {
        if (d >= cm.near.t_cw) pool.push_back(it);
      }
      if (pool.size() < 2) {
        pool.clear();
        for (const auto& entry : scored) pool.push_back(entry.first);
      }
      std::vector<StrokeSequence> exemplar_seqs;
      for (const Item* it : pool) {
        if (exemplar_seqs.size() == static_cast<std::size_t>(config.max_wrong_exemplars)) break;
        exemplar_seqs.push_back(it->features.sequence);
        t.wrong_exemplars.push_back({c, it->entry->sample});
      }

      // Roles swapped: pool samples are the near class of the exemplar set.
      std::vector<double> w_near, w_far;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        std::vector<StrokeSequence> others;
        for (std::size_t j = 0; j < exemplar_seqs.size(); ++j) {
          if (j != i) others.push_back(exemplar_seqs[j]);
        }
        if (auto d = nearest_distance(pool[i]->features.sequence, others, t.stats, c)) {
          w_near.push_back(*d);
        }
      }
      for (const auto& m : models) {
        if (auto d = nearest_distance(m.features.sequence, exemplar_seqs, t.stats, c)) {
          w_far.push_back(*d);
        }
      }
      for (const auto& it : fit) {
        if (it.entry->mode) continue;
        if (auto d = nearest_distance(it.features.sequence, exemplar_seqs, t.stats, c)) {
          w_far.push_back(*d);
        }
      }
      if (w_near.empty()) w_near.push_back(0.0);
      if (w_far.empty()) w_far.push_back(w_near.back());
      cm.far = compute_thresholds(w_near, w_far, config.u_max, config.u_min);

      // Binary classifiers: criterion satisfied vs not, over models + fit half.
      FeatureMatrix x_fdm, x_shape;
      std::vector<int> y;
      auto add = [&](const Item& it) {
        x_fdm.push_back(it.features.fdm);
        x_shape.push_back(shape_input(it.features, c));
        y.push_back(it.entry->criteria[idx(c)] ? 1 : -1);
      };
      for (const auto& m : models) add(m);
      for (const auto& it : fit) add(it);
      const bool both = std::count(y.begin(), y.end(), 1) > 0 &&
                        std::count(y.begin(), y.end(), -1) > 0;
      if (both && engine_applies(c, Engine::kFdm)) {
        cm.fdm = train_svm(x_fdm, y, config.svm).model;
      }
      if (both && engine_applies(c, Engine::kShape)) {
        cm.shape = train_svm(x_shape, y, config.svm).model;
      }
    }

    FitReport report;
    report.target = target;
    for (const auto& it : val) report.validation_paths.push_back(it.entry->path);
    t.weights = FusionWeights::uniform();
    if (config.weights == WeightSource::kValidation && !val.empty()) {
      const PreparedTemplate prepared(t);
      for (Criterion c : kAllCriteria) {
        if (!t[c].assessed) continue;
        std::array<int, kEngineCount> hits{};
        std::array<int, kEngineCount> total{};
        for (const auto& it : val) {
          const bool truth = it.entry->criteria[idx(c)];
          const EngineScores s = engine_scores(prepared, it.features, c);
          for (Engine e : engines_for(c)) {
            if (!s[idx(e)]) continue;
            ++total[idx(e)];
            hits[idx(e)] += ((*s[idx(e)] >= 0.5) == truth) ? 1 : 0;
          }
        }
        report.validation_counts[idx(c)] = static_cast<int>(val.size());
        for (Engine e : engines_for(c)) {
          if (total[idx(e)] > 0) {
            t.weights.set(c, e, static_cast<double>(hits[idx(e)]) / total[idx(e)]);
          }
        }
      }
    }
    report.ccr = t.weights;
    if (reports) reports->push_back(report);
    out.push_back(std::move(t));
  }
  return out;
}

std::string template_to_json(const Template& t) {
  Json models = Json::array();
  for (const auto& m : t.models) models.push_back(internal::sample_to_json(m));
  Json wrong = Json::array();
  for (const auto& w : t.wrong_exemplars) {
    wrong.push_back({{"error_criterion", std::string(to_string(w.error_criterion))},
                     {"sample", internal::sample_to_json(w.sample)}});
  }
  Json thresholds = Json::object(), weights = Json::object(), svm = Json::object();
  Json not_assessed = Json::array();
  for (Criterion c : kAllCriteria) {
    const std::string name(to_string(c));
    const CriterionModel& cm = t[c];
    if (!cm.assessed) not_assessed.push_back(name);
    thresholds[name] = {{"bem", thresholds_json(cm.near)}, {"bem_wrong", thresholds_json(cm.far)}};
    Json w = Json::object();
    for (Engine e : engines_for(c)) w[std::string(to_string(e))] = t.weights.get(c, e);
    weights[name] = w;
    Json machines = Json::object();
    if (cm.fdm) machines["fdm"] = svm_json(*cm.fdm);
    if (cm.shape) machines["shape"] = svm_json(*cm.shape);
    svm[name] = machines;
  }
  const Json doc = {
      {"version", kTemplateVersion},
      {"target", t.target},
      {"script", std::string(to_string(t.script))},
      {"guidelines",
       {{"baseline_y", t.guidelines.baseline_y}, {"median_top_y", t.guidelines.median_top_y}}},
      {"models", models},
      {"wrong_exemplars", wrong},
      {"stats", {{"mean", t.stats.mean}, {"std", t.stats.std}, {"period", t.stats.period}}},
      {"thresholds", thresholds},
      {"weights", weights},
      {"svm", svm},
      {"not_assessed", not_assessed},
      {"config",
       {{"sample_rate", t.config.preprocess.sample_rate},
        {"u_max", t.config.u_max},
        {"u_min", t.config.u_min},
        {"shape_floor", t.config.shape_floor},
        {"extractor_id", t.config.extractor_id},
        {"model_count", t.config.model_count}}},
  };
  return doc.dump(1) + "\n";
}

Template template_from_json(std::string_view document) {
  const Json doc = internal::parse_json(document, kWhat);
  Template t;
  const auto version = internal::require_number(doc, "version", kWhat);
  if (version != kTemplateVersion) throw FormatError("template: unsupported version");
  const Json& target = internal::require(doc, "target", kWhat);
  if (!target.is_string()) throw FormatError("template: target must be a string");
  t.target = target.get<std::string>();
  check_target_name(t.target);
  const Json& script = internal::require(doc, "script", kWhat);
  const auto parsed_script = script.is_string() ? parse_script(script.get<std::string>())
                                                : std::nullopt;
  if (!parsed_script) throw FormatError("template: unknown script");
  t.script = *parsed_script;
  const Json& g = internal::require(doc, "guidelines", kWhat);
  t.guidelines.baseline_y = internal::require_number(g, "baseline_y", kWhat);
  t.guidelines.median_top_y = internal::require_number(g, "median_top_y", kWhat);
  if (!t.guidelines.valid()) throw FormatError("template: invalid guidelines");

  const Json& cfg = internal::require(doc, "config", kWhat);
  t.config.preprocess.sample_rate = internal::require_number(cfg, "sample_rate", kWhat);
  t.config.u_max = internal::require_number(cfg, "u_max", kWhat);
  t.config.u_min = internal::require_number(cfg, "u_min", kWhat);
  t.config.shape_floor = internal::require_number(cfg, "shape_floor", kWhat);
  t.config.model_count = static_cast<int>(internal::require_number(cfg, "model_count", kWhat));
  const Json& ext = internal::require(cfg, "extractor_id", kWhat);
  if (!ext.is_string()) throw FormatError("template: extractor_id must be a string");
  t.config.extractor_id = ext.get<std::string>();
  t.config.validate();

  const Json& models = internal::require(doc, "models", kWhat);
  if (!models.is_array() || models.empty()) throw FormatError("template: no models");
  for (const auto& m : models) t.models.push_back(internal::sample_from_json(m));
  const Json& wrong = internal::require(doc, "wrong_exemplars", kWhat);
  if (!wrong.is_array()) throw FormatError("template: wrong_exemplars must be an array");
  for (const auto& w : wrong) {
    t.wrong_exemplars.push_back({criterion_from(internal::require(w, "error_criterion", kWhat)),
                                 internal::sample_from_json(internal::require(w, "sample", kWhat))});
  }

  const Json& stats = internal::require(doc, "stats", kWhat);
  t.stats.mean = fixed_array<kCompareDim>(internal::require(stats, "mean", kWhat), "stats.mean");
  t.stats.std = fixed_array<kCompareDim>(internal::require(stats, "std", kWhat), "stats.std");
  t.stats.period =
      fixed_array<kCompareDim>(internal::require(stats, "period", kWhat), "stats.period");
  for (double s : t.stats.std) {
    if (!(s > 0.0)) throw FormatError("template: stats.std must be > 0");
  }

  const Json& thresholds = internal::require(doc, "thresholds", kWhat);
  const Json& weights = internal::require(doc, "weights", kWhat);
  const Json& svm = internal::require(doc, "svm", kWhat);
  std::vector<std::string> not_assessed;
  if (doc.contains("not_assessed")) {
    for (const auto& n : doc.at("not_assessed")) not_assessed.push_back(n.get<std::string>());
  }
  for (Criterion c : kAllCriteria) {
    const std::string name(to_string(c));
    CriterionModel& cm = t[c];
    cm.assessed = std::find(not_assessed.begin(), not_assessed.end(), name) == not_assessed.end();
    const Json& th = internal::require(thresholds, name.c_str(), kWhat);
    cm.near = thresholds_from(internal::require(th, "bem", kWhat));
    cm.far = thresholds_from(internal::require(th, "bem_wrong", kWhat));
    const Json& w = internal::require(weights, name.c_str(), kWhat);
    for (Engine e : engines_for(c)) {
      const std::string en(to_string(e));
      t.weights.set(c, e, internal::require_number(w, en.c_str(), kWhat));
    }
    const Json& machines = internal::require(svm, name.c_str(), kWhat);
    if (machines.contains("fdm")) cm.fdm = svm_from(machines.at("fdm"));
    if (machines.contains("shape")) cm.shape = svm_from(machines.at("shape"));
  }
  return t;
}

TemplateSet::TemplateSet(std::vector<Template> templates) {
  for (auto& t : templates) {
    std::string key = t.target;
    templates_.erase(key);
    templates_.emplace(std::move(key), PreparedTemplate(std::move(t)));
  }
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw InputError("template directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Template> templates;
  for (const auto& f : files) {
    try {
      templates.push_back(template_from_json(read_text_file(f)));
    } catch (const FormatError& e) {
      throw FormatError(f.filename().string() + ": " + e.what());
    }
  }
  if (templates.empty()) throw InputError("no templates in " + dir.string());
  return TemplateSet(std::move(templates));
}

void TemplateSet::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [target, t] : templates_) {
    write_text_file(dir / (target + ".json"), template_to_json(t.data()));
  }
}

const PreparedTemplate* TemplateSet::find(std::string_view target) const {
  const auto it = templates_.find(target);
  return it == templates_.end() ? nullptr : &it->second;
}

std::vector<std::string> TemplateSet::targets() const {
  std::vector<std::string> out;
  for (const auto& [target, t] : templates_) out.push_back(target);
  return out;
}

}  // namespace hqa
