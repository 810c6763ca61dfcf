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

#include "hqa/ink_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hqa/errors.hpp"
#include "json_codec.hpp"

namespace hqa {
namespace internal {

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

Json sample_to_json(const InkSample& sample) {
  Json doc = Json::object();
  doc["version"] = kInkFormatVersion;
  doc["script"] = std::string(to_string(sample.meta.script));
  doc["target"] = sample.meta.target;
  if (sample.meta.writer_id) doc["writer_id"] = *sample.meta.writer_id;
  doc["guidelines"] = Json{{"baseline_y", sample.guidelines.baseline_y},
                           {"median_top_y", sample.guidelines.median_top_y}};
  Json strokes = Json::array();
  for (const auto& stroke : sample.strokes) {
    Json points = Json::array();
    for (const auto& p : stroke.points) {
      points.push_back(Json{{"x", p.x}, {"y", p.y}, {"t", p.t}});
    }
    strokes.push_back(std::move(points));
  }
  doc["strokes"] = std::move(strokes);
  return doc;
}

InkSample sample_from_json(const Json& doc) {
  constexpr std::string_view kWhat = "ink sample";
  if (!doc.is_object()) throw FormatError("ink sample: expected an object");

  const Json& version = require(doc, "version", kWhat);
  if (!version.is_number_integer() || version.get<int>() != kInkFormatVersion) {
    throw FormatError("ink sample: unsupported version");
  }

  InkSample sample;
  const Json& script = require(doc, "script", kWhat);
  if (!script.is_string()) throw FormatError("ink sample: script not a string");
  auto parsed = parse_script(script.get<std::string>());
  if (!parsed) {
    throw FormatError("ink sample: unknown script '" +
                      script.get<std::string>() + "'");
  }
  sample.meta.script = *parsed;

  const Json& target = require(doc, "target", kWhat);
  if (!target.is_string() || target.get<std::string>().empty()) {
    throw FormatError("ink sample: target must be a non-empty string");
  }
  sample.meta.target = target.get<std::string>();

  if (doc.contains("writer_id") && !doc.at("writer_id").is_null()) {
    if (!doc.at("writer_id").is_string()) {
      throw FormatError("ink sample: writer_id must be a string");
    }
    sample.meta.writer_id = doc.at("writer_id").get<std::string>();
  }

  const Json& lines = require(doc, "guidelines", kWhat);
  sample.guidelines.baseline_y = require_number(lines, "baseline_y", kWhat);
  sample.guidelines.median_top_y = require_number(lines, "median_top_y", kWhat);
  if (!sample.guidelines.valid()) {
    throw FormatError(
        "ink sample: guidelines need finite median_top_y < baseline_y");
  }

  const Json& strokes = require(doc, "strokes", kWhat);
  if (!strokes.is_array() || strokes.empty()) {
    throw FormatError("ink sample: strokes must be a non-empty array");
  }
  sample.strokes.reserve(strokes.size());
  for (std::size_t s = 0; s < strokes.size(); ++s) {
    const Json& points = strokes[s];
    if (!points.is_array() || points.empty()) {
      throw FormatError("ink sample: stroke must be a non-empty array", s);
    }
    PenStroke stroke;
    stroke.points.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Json& p = points[i];
      const auto field = [&](const char* key) {
        if (!p.is_object() || !p.contains(key) || !p.at(key).is_number()) {
          throw FormatError(std::string("ink sample: point missing numeric '") +
                                key + "'",
                            s, i);
        }
        const double v = p.at(key).get<double>();
        if (!std::isfinite(v)) {
          throw FormatError("ink sample: non-finite coordinate", s, i);
        }
        return v;
      };
      InkPoint pt{field("x"), field("y"), field("t")};
      if (!stroke.points.empty() && !(pt.t > stroke.points.back().t)) {
        throw FormatError("ink sample: non-monotone timestamp", s, i);
      }
      stroke.points.push_back(pt);
    }
    sample.strokes.push_back(std::move(stroke));
  }
  return sample;
}

}  // namespace internal

InkSample read_sample(std::string_view document) {
  return internal::sample_from_json(
      internal::parse_json(document, "ink sample"));
}

std::string write_sample(const InkSample& sample) {
  return internal::sample_to_json(sample).dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("write failed for " + path.string());
}

InkSample load_sample(const std::filesystem::path& path) {
  return read_sample(read_text_file(path));
}

void save_sample(const InkSample& sample, const std::filesystem::path& path) {
  write_text_file(path, write_sample(sample));
}

}  // namespace hqa
