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


// Synthetic handwriting corpus: parametric symbol specs drawn with beta speed
// pulses, label-true error perturbations, and manifest persistence.

#ifndef HQA_CORPUS_SYNTH_HPP_
#define HQA_CORPUS_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hqa/ink.hpp"
#include "hqa/preprocess.hpp"
#include "hqa/sd_dd.hpp"

namespace hqa {

// Cubic Bezier piece in guideline coordinates (median zone [40, 100]).
struct Bezier {
  std::array<Point2, 4> p{};
};

Bezier line(Point2 a, Point2 b);
Bezier curve(Point2 a, Point2 c1, Point2 c2, Point2 b);

// One pen-down stroke; consecutive pieces share endpoints and are drawn as
// overlapping speed pulses.
struct StrokeSpec {
  std::vector<Bezier> pieces;
};

struct SymbolSpec {
  std::string target;
  Script script = Script::kLatinChar;
  std::vector<StrokeSpec> strokes;

  bool valid() const;
};

// Six Arabic letters, six Latin capitals, three digits and two symbols.
std::span<const SymbolSpec> starter_specs();
const SymbolSpec* find_spec(std::string_view target);

inline constexpr double kDefaultNoiseLevel = 0.1;

// 64-bit mix used to derive per-sample seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Style-varied rendering at 100 points/s. Deterministic in `style_seed`.
// Style variation and coordinate noise are both off when `style` is false.
InkSample synth_sample(const SymbolSpec& spec, std::uint64_t style_seed,
                       double noise_level = kDefaultNoiseLevel, bool style = true);

enum class ErrorKind {
  kOmitStroke,
  kDeformShape,
  kExceedStroke,
  kReverseDirection,
  kSwapOrder,
  kBaselineOverflow,
  kKinematicJitter,
};

inline constexpr std::array<ErrorKind, 7> kAllErrorKinds = {
    ErrorKind::kOmitStroke, ErrorKind::kDeformShape, ErrorKind::kExceedStroke,
    ErrorKind::kReverseDirection, ErrorKind::kSwapOrder,
    ErrorKind::kBaselineOverflow, ErrorKind::kKinematicJitter};

std::string_view to_string(ErrorKind kind);
std::optional<ErrorKind> parse_error_kind(std::string_view text);

// Criterion made wrong by each kind, and the matching verdict class index.
Criterion criterion_of(ErrorKind kind);
int class_of(ErrorKind kind);

struct ErrorMode {
  ErrorKind kind = ErrorKind::kDeformShape;
  double magnitude = 0.0;  // 0 leaves the sample unchanged

  static ErrorMode standard(ErrorKind kind);
};

// Omit and swap need at least two strokes.
bool applicable(ErrorKind kind, const InkSample& sample);

// Throws InputError for an inapplicable mode or a negative magnitude.
InkSample perturb(const InkSample& sample, const ErrorMode& mode, std::uint64_t seed);

struct CorpusEntry {
  std::string path;  // relative to the manifest directory
  std::string target;
  int class_index = 1;
  std::array<bool, 5> criteria{true, true, true, true, true};
  std::string split;  // "train" or "test"
  std::optional<ErrorKind> mode;
  InkSample sample;

  std::optional<Criterion> error_criterion() const;
};

struct CorpusSizes {
  int train_correct = 30;
  int train_wrong = 20;  // per error kind
  int test = 5;         // per category

  bool valid() const;
};

struct Corpus {
  std::uint64_t seed = 0;
  std::vector<CorpusEntry> entries;
};

// One category per spec for correct samples plus one per applicable error
// kind. Deterministic in `seed`.
Corpus build_corpus(std::span<const SymbolSpec> specs, const CorpusSizes& sizes,
                    std::uint64_t seed);

// Writes one ink file per entry under `dir` plus dir/manifest.json.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

// Reads a manifest and every sample it lists (paths relative to it).
Corpus load_corpus(const std::filesystem::path& manifest);

}  // namespace hqa

#endif  // HQA_CORPUS_SYNTH_HPP_
