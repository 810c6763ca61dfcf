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


// Shared fixture for the tool tests: a small corpus and template set on disk.

#ifndef HQA_TESTS_TOOLS_FIXTURE_HPP_
#define HQA_TESTS_TOOLS_FIXTURE_HPP_

#include <gtest/gtest.h>

#include <array>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "hqa/corpus_synth.hpp"
#include "hqa/templates.hpp"

namespace hqa::testing {

class ToolsEnvironment {
 public:
  static const ToolsEnvironment& get() {
    static const ToolsEnvironment env;
    return env;
  }

  std::filesystem::path root;
  std::filesystem::path manifest;
  std::filesystem::path templates;
  Corpus corpus;

 private:
  ~ToolsEnvironment() {
    std::error_code ec;
    std::filesystem::remove_all(root, ec);
  }
  ToolsEnvironment() {
    root = std::filesystem::temp_directory_path() /
           ("hqa_tools_test_" + std::to_string(::getpid()));
    std::filesystem::remove_all(root);
    const std::array<SymbolSpec, 2> specs = {*find_spec("L"), *find_spec("plus")};
    corpus = build_corpus(specs, {8, 6, 1}, 4);
    write_corpus(corpus, root / "corpus");
    manifest = root / "corpus" / "manifest.json";
    templates = root / "templates";
    TemplateSet(fit_templates(corpus, PipelineConfig{})).save(templates);
  }
};

}  // namespace hqa::testing

#endif  // HQA_TESTS_TOOLS_FIXTURE_HPP_
