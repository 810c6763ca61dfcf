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

// Ink sample documents:
//
//   {"version":1, "script":"arabic_char", "target":"taa",
//    "guidelines":{"baseline_y":100.0,"median_top_y":40.0},
//    "strokes":[[{"x":..,"y":..,"t":..},...],...]}
//
// An optional "writer_id" string is accepted and preserved. Unknown keys are
// ignored. The same document is the body of POST /v1/analyze.

#ifndef HQA_INK_IO_HPP_
#define HQA_INK_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "hqa/ink.hpp"

namespace hqa {

inline constexpr int kInkFormatVersion = 1;

// Throws FormatError on malformed JSON, missing fields, non-finite numbers or
// non-increasing timestamps inside a stroke (with stroke and point index).
InkSample read_sample(std::string_view document);

// Numbers are written with round-trip precision.
std::string write_sample(const InkSample& sample);

InkSample load_sample(const std::filesystem::path& path);
void save_sample(const InkSample& sample, const std::filesystem::path& path);

// Shared by every tool that writes text files; throws InputError on failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace hqa

#endif  // HQA_INK_IO_HPP_
