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
#include <sstream>
#include <string>
#include <vector>

#include "fixture.hpp"
#include "hqa/ink_io.hpp"
#include "hqa/pipeline.hpp"
#include "hqa/tools/cli.hpp"
#include "hqa/tools/service.hpp"

namespace hqa::tools {
namespace {

namespace fs = std::filesystem;
using hqa::testing::ToolsEnvironment;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "hqa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { env_ = &ToolsEnvironment::get(); }
  std::string sample(const char* rel) const { return (env_->root / "corpus" / rel).string(); }
  const ToolsEnvironment* env_ = nullptr;
};

TEST_F(CliTest, AnalyzePrintsTheReport) {
  const CliRun r = run({"analyze", "--sample", sample("L/test_c0_0.json"), "--templates",
                     env_->templates.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const TemplateSet set = TemplateSet::load(env_->templates);
  EXPECT_EQ(r.out, report_json(analyze(load_sample(sample("L/test_c0_0.json")), set)));
}

TEST_F(CliTest, AnalyzeIsByteIdenticalAndMatchesService) {
  const fs::path a = env_->root / "a.json", b = env_->root / "b.json";
  for (const auto& path : {a, b}) {
    const CliRun r = run({"analyze", "--sample", sample("plus/test_c3_0.json"), "--templates",
                       env_->templates.string(), "--report", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
  EXPECT_EQ(read_text_file(a), read_text_file(b));
  const TemplateSet set = TemplateSet::load(env_->templates);
  EXPECT_EQ(read_text_file(a),
            handle_analyze(set, read_text_file(sample("plus/test_c3_0.json"))).body);
}

TEST_F(CliTest, InputErrorsExitWithTwo) {
  EXPECT_EQ(run({"analyze", "--sample", "/nonexistent.json", "--templates",
                 env_->templates.string()})
                .code,
            kExitInputError);
  EXPECT_EQ(run({"analyze", "--sample", sample("L/test_c0_0.json"), "--templates",
                 "/nonexistent_dir"})
                .code,
            kExitInputError);
  EXPECT_EQ(run({"analyze", "--sample", sample("L/test_c0_0.json")}).code, kExitInputError);
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"synth", "--out", "x", "--seed", "minus"}).code, kExitInputError);
  EXPECT_EQ(run({"serve", "--templates", "t", "--port", "70000"}).code, kExitInputError);
  const CliRun r = run({"eval", "--corpus", "/nonexistent/manifest.json", "--templates",
                     env_->templates.string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("analyze"), std::string::npos);
}

TEST_F(CliTest, FitThenEval) {
  const fs::path out = env_->root / "cli_templates";
  const CliRun fit = run({"fit", "--corpus", env_->manifest.string(), "--out", out.string()});
  ASSERT_EQ(fit.code, kExitOk) << fit.err;
  EXPECT_TRUE(fs::exists(out / "L.json"));
  EXPECT_TRUE(fs::exists(out / "plus.json"));
  // Fitting from disk reproduces the in-memory templates.
  EXPECT_EQ(read_text_file(out / "L.json"), read_text_file(env_->templates / "L.json"));

  const CliRun eval = run({"eval", "--corpus", env_->manifest.string(), "--templates", out.string()});
  ASSERT_EQ(eval.code, kExitOk) << eval.err;
  EXPECT_NE(eval.out.find("global accuracy"), std::string::npos);
  EXPECT_NE(eval.out.find("mean accuracy"), std::string::npos);
  EXPECT_EQ(eval.out, format_eval(evaluate(env_->corpus, TemplateSet::load(out))));
}

TEST_F(CliTest, SynthIsSeedDeterministic) {
  const fs::path a = env_->root / "synth_a", b = env_->root / "synth_b";
  ASSERT_EQ(run({"synth", "--out", a.string(), "--seed", "11"}).code, kExitOk);
  ASSERT_EQ(run({"synth", "--out", b.string(), "--seed", "11"}).code, kExitOk);
  EXPECT_EQ(read_text_file(a / "manifest.json"), read_text_file(b / "manifest.json"));
  EXPECT_EQ(read_text_file(a / "A" / "test_c0_0.json"), read_text_file(b / "A" / "test_c0_0.json"));
  EXPECT_EQ(read_text_file(a / "taa" / "train_c6_3.json"),
            read_text_file(b / "taa" / "train_c6_3.json"));
  const Corpus c = load_corpus(a / "manifest.json");
  EXPECT_EQ(c.seed, 11u);
  EXPECT_EQ(c.entries.size(), build_corpus(starter_specs(), {}, 11).entries.size());
  fs::remove_all(a);
  fs::remove_all(b);
}

}  // namespace
}  // namespace hqa::tools
