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


#include <array>
#include <vector>

#include <benchmark/benchmark.h>

#include "hqa/corpus_synth.hpp"
#include "hqa/pipeline.hpp"

namespace hqa {
namespace {

InkSample letter(std::uint64_t seed) { return synth_sample(*find_spec("A"), seed); }

void BM_ExtractFeatures(benchmark::State& state) {
  const InkSample s = letter(1);
  const PipelineConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(extract_features(s, config));
}
BENCHMARK(BM_ExtractFeatures)->Unit(benchmark::kMillisecond);

void BM_Rasterize(benchmark::State& state) {
  const InkSample s = extract_features(letter(2), PipelineConfig{}).normalized;
  for (auto _ : state) benchmark::DoNotOptimize(shape_features(rasterize(s)));
}
BENCHMARK(BM_Rasterize)->Unit(benchmark::kMicrosecond);

void BM_SdDd(benchmark::State& state) {
  const PipelineConfig config;
  std::vector<StrokeSequence> models;
  for (std::uint64_t i = 0; i < 3; ++i) {
    models.push_back(extract_features(letter(10 + i), config).sequence);
  }
  const StrokeSequence test = extract_features(letter(20), config).sequence;
  const auto stats = FeatureStats::fit_matched(models);
  const auto sel = SelectorVector::for_criterion(Criterion::kShape);
  for (auto _ : state) benchmark::DoNotOptimize(sd_dd(test, models, sel, stats));
}
BENCHMARK(BM_SdDd)->Unit(benchmark::kMicrosecond);

void BM_Analyze(benchmark::State& state) {
  static const TemplateSet set = [] {
    const std::array<SymbolSpec, 1> specs = {*find_spec("L")};
    return TemplateSet(fit_templates(build_corpus(specs, {8, 6, 1}, 3), PipelineConfig{}));
  }();
  InkSample s = synth_sample(*find_spec("L"), 99);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(s, set));
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hqa

BENCHMARK_MAIN();
