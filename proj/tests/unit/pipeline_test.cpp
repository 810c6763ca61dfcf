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


#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include <unistd.h>

#include "hqa/errors.hpp"
#include "hqa/ink_io.hpp"
#include "hqa/pipeline.hpp"
#include "json.hpp"

namespace hqa {
namespace {

namespace fs = std::filesystem;

// One multi-stroke and one single-stroke target, fitted once.
class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const std::vector<SymbolSpec> specs = {*find_spec("H"), *find_spec("C")};
    corpus_ = new Corpus(build_corpus(specs, {12, 8, 2}, 17));
    reports_ = new std::vector<FitReport>();
    templates_ = new std::vector<Template>(fit_templates(*corpus_, PipelineConfig{}, reports_));
    set_ = new TemplateSet(*templates_);
  }
  static void TearDownTestSuite() {
    delete set_;
    delete templates_;
    delete reports_;
    delete corpus_;
  }

  static const CorpusEntry& entry(const std::string& path) {
    for (const auto& e : corpus_->entries) {
      if (e.path == path) return e;
    }
    throw std::runtime_error("no entry " + path);
  }

  static Corpus* corpus_;
  static std::vector<FitReport>* reports_;
  static std::vector<Template>* templates_;
  static TemplateSet* set_;
};

Corpus* PipelineTest::corpus_ = nullptr;
std::vector<FitReport>* PipelineTest::reports_ = nullptr;
std::vector<Template>* PipelineTest::templates_ = nullptr;
TemplateSet* PipelineTest::set_ = nullptr;

TEST_F(PipelineTest, OneTemplatePerTargetWithThreeModels) {
  ASSERT_EQ(set_->size(), 2u);
  EXPECT_EQ(set_->targets(), (std::vector<std::string>{"C", "H"}));
  for (const auto& t : *templates_) {
    EXPECT_EQ(t.models.size(), 3u);
    EXPECT_FALSE(t.wrong_exemplars.empty());
  }
}

TEST_F(PipelineTest, ThresholdsAreOrdered) {
  for (const auto& t : *templates_) {
    for (Criterion c : kAllCriteria) {
      EXPECT_LE(t[c].near.t_cc, t[c].near.t_cw) << t.target << " " << to_string(c);
      if (t[c].assessed) {
        EXPECT_LE(t[c].far.t_cc, t[c].far.t_cw) << t.target << " " << to_string(c);
      }
    }
  }
}

TEST_F(PipelineTest, SingleStrokeTargetSkipsOrder) {
  const Template& c = set_->find("C")->data();
  EXPECT_FALSE(c[Criterion::kOrder].assessed);
  EXPECT_TRUE(set_->find("H")->data()[Criterion::kOrder].assessed);
  const Verdict v = analyze(entry("C/test_c0_0.json").sample, *set_);
  ASSERT_EQ(v.not_assessed.size(), 1u);
  EXPECT_EQ(v.not_assessed[0], Criterion::kOrder);
  EXPECT_EQ(v.scores[Criterion::kOrder], 100.0);
}

TEST_F(PipelineTest, WeightsMatchValidationRecount) {
  ASSERT_EQ(reports_->size(), 2u);
  for (const auto& report : *reports_) {
    const PreparedTemplate* tpl = set_->find(report.target);
    ASSERT_NE(tpl, nullptr);
    ASSERT_FALSE(report.validation_paths.empty());
    // Independent tally: per criterion and engine, hits / total over the
    // validation samples, an engine voting "satisfied" at >= 0.5.
    std::map<std::pair<int, int>, std::pair<int, int>> tally;
    for (const auto& path : report.validation_paths) {
      const CorpusEntry& e = entry(path);
      const SampleFeatures f = extract_features(e.sample, tpl->data().config);
      for (Criterion c : kAllCriteria) {
        if (!tpl->data()[c].assessed) continue;
        const EngineScores s = engine_scores(*tpl, f, c);
        for (int g = 0; g < kEngineCount; ++g) {
          if (!s[g]) continue;
          auto& [hit, total] = tally[{static_cast<int>(c), g}];
          ++total;
          if ((*s[g] >= 0.5) == e.criteria[static_cast<std::size_t>(c)]) ++hit;
        }
      }
    }
    for (const auto& [key, counts] : tally) {
      const auto c = static_cast<Criterion>(key.first);
      const auto g = static_cast<Engine>(key.second);
      EXPECT_DOUBLE_EQ(tpl->data().weights.get(c, g),
                       static_cast<double>(counts.first) / counts.second)
          << report.target << " " << to_string(c) << " " << to_string(g);
      EXPECT_DOUBLE_EQ(report.ccr.get(c, g), tpl->data().weights.get(c, g));
    }
  }
}

TEST_F(PipelineTest, ReportIsDeterministicAndBounded) {
  for (const auto& e : corpus_->entries) {
    if (e.split != "test") continue;
    const Verdict v = analyze(e.sample, *set_);
    EXPECT_EQ(report_json(v), report_json(analyze(e.sample, *set_)));
    for (Criterion c : kAllCriteria) {
      EXPECT_GE(v.scores[c], 0.0);
      EXPECT_LE(v.scores[c], 100.0);
      const auto& q = v.qualitative[static_cast<std::size_t>(c)];
      EXPECT_NEAR(q.r1 + q.r2, 1.0, 1e-12);
    }
    EXPECT_GE(v.class_index(), 1);
    EXPECT_LE(v.class_index(), 6);
  }
}

TEST_F(PipelineTest, ReportDocumentShape) {
  const Verdict v = analyze(entry("H/test_c0_1.json").sample, *set_);
  const auto doc = nlohmann::json::parse(report_json(v));
  EXPECT_EQ(doc.at("target"), "H");
  EXPECT_EQ(doc.at("class_index").get<int>(), v.class_index());
  EXPECT_EQ(doc.at("class_label"), std::string(to_string(v.verdict)));
  for (Criterion c : kAllCriteria) {
    const std::string name(to_string(c));
    EXPECT_DOUBLE_EQ(doc.at("scores").at(name).get<double>(), v.scores[c]);
    const auto& q = doc.at("qualitative").at(name);
    ASSERT_EQ(q.at("labels").size(), q.at("rates").size());
    double sum = 0.0;
    for (const auto& r : q.at("rates")) sum += r.get<double>();
    EXPECT_NEAR(sum, 1.0, 1e-9) << name;
  }
  EXPECT_TRUE(doc.at("warnings").is_array());
}

TEST_F(PipelineTest, TemplateJsonRoundTrip) {
  for (const auto& t : *templates_) {
    const std::string text = template_to_json(t);
    const Template back = template_from_json(text);
    EXPECT_EQ(template_to_json(back), text) << t.target;
  }
}

TEST_F(PipelineTest, SavedSetAnalyzesIdentically) {
  const fs::path dir =
      fs::temp_directory_path() / ("hqa_pipeline_set_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  set_->save(dir);
  EXPECT_TRUE(fs::exists(dir / "H.json"));
  const TemplateSet loaded = TemplateSet::load(dir);
  EXPECT_EQ(loaded.targets(), set_->targets());
  for (const auto& e : corpus_->entries) {
    if (e.split != "test") continue;
    EXPECT_EQ(report_json(analyze(e.sample, loaded)), report_json(analyze(e.sample, *set_)))
        << e.path;
  }
  fs::remove_all(dir);
}

TEST_F(PipelineTest, RefitIsDeterministic) {
  const auto again = fit_templates(*corpus_, PipelineConfig{});
  ASSERT_EQ(again.size(), templates_->size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    EXPECT_EQ(template_to_json(again[i]), template_to_json((*templates_)[i]));
  }
}

TEST_F(PipelineTest, EvaluateCountsEveryTestSample) {
  const EvalResult r = evaluate(*corpus_, *set_);
  int tests = 0;
  for (const auto& e : corpus_->entries) tests += e.split == "test" ? 1 : 0;
  EXPECT_EQ(r.samples, tests);
  int sum = 0, diagonal = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) sum += r.confusion[i][j];
    diagonal += r.confusion[i][i];
  }
  EXPECT_EQ(sum, tests);
  EXPECT_EQ(diagonal, r.class_hits);
  // Order is skipped for the single-stroke target.
  EXPECT_EQ(r.criterion_total[static_cast<std::size_t>(Criterion::kOrder)], 16);
  EXPECT_EQ(r.criterion_total[static_cast<std::size_t>(Criterion::kShape)], tests);
  EXPECT_NE(format_eval(r).find("global accuracy"), std::string::npos);
}

TEST_F(PipelineTest, InputErrors) {
  InkSample unknown = entry("H/test_c0_0.json").sample;
  unknown.meta.target = "Z";
  EXPECT_THROW(analyze(unknown, *set_), InputError);
  InkSample empty;
  empty.meta.target = "H";
  EXPECT_THROW(analyze(empty, *set_), InputError);
}

TEST_F(PipelineTest, MalformedTemplatesAreRejected) {
  auto doc = nlohmann::ordered_json::parse(template_to_json(templates_->front()));
  doc["version"] = 99;
  EXPECT_THROW(template_from_json(doc.dump()), FormatError);
  doc["version"] = 1;
  doc["stats"]["std"][0] = 0.0;
  EXPECT_THROW(template_from_json(doc.dump()), FormatError);
  doc = nlohmann::ordered_json::parse(template_to_json(templates_->front()));
  doc.erase("thresholds");
  EXPECT_THROW(template_from_json(doc.dump()), FormatError);
  EXPECT_THROW(template_from_json("not json"), FormatError);
  EXPECT_THROW(TemplateSet::load(fs::temp_directory_path() / "hqa_no_such_dir"), InputError);
}

TEST(FitTemplatesTest, IdenticalModelsGiveZeroNearThreshold) {
  const InkSample model = synth_sample(*find_spec("L"), 1);
  Corpus corpus;
  for (int i = 0; i < 3; ++i) {
    CorpusEntry e;
    e.path = "L/m" + std::to_string(i);
    e.target = "L";
    e.split = "train";
    e.sample = model;
    corpus.entries.push_back(e);
  }
  for (int i = 0; i < 4; ++i) {
    CorpusEntry e;
    e.path = "L/w" + std::to_string(i);
    e.target = "L";
    e.split = "train";
    e.mode = ErrorKind::kReverseDirection;
    e.class_index = 4;
    e.criteria[static_cast<std::size_t>(Criterion::kDirection)] = false;
    e.sample = perturb(synth_sample(*find_spec("L"), 10 + i),
                       ErrorMode::standard(ErrorKind::kReverseDirection), i);
    corpus.entries.push_back(e);
  }
  const auto t = fit_templates(corpus, PipelineConfig{});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0][Criterion::kDirection].near.t_cc, 0.0);
  EXPECT_TRUE(t[0][Criterion::kDirection].assessed);
  EXPECT_FALSE(t[0][Criterion::kShape].assessed);
}

TEST(FitTemplatesTest, TooFewModelsIsAnInputError) {
  Corpus corpus;
  CorpusEntry e;
  e.path = "L/m0";
  e.target = "L";
  e.split = "train";
  e.sample = synth_sample(*find_spec("L"), 1);
  corpus.entries.push_back(e);
  EXPECT_THROW(fit_templates(corpus, PipelineConfig{}), InputError);
  EXPECT_THROW(fit_templates(Corpus{}, PipelineConfig{}), InputError);
  PipelineConfig bad;
  bad.u_max = 1.5;
  EXPECT_THROW(fit_templates(corpus, bad), InputError);
}

}  // namespace
}  // namespace hqa
