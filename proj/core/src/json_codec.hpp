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

// JSON helpers shared by the document readers/writers. Not installed.

#ifndef HQA_SRC_JSON_CODEC_HPP_
#define HQA_SRC_JSON_CODEC_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "hqa/errors.hpp"
#include "hqa/ink.hpp"
#include "json.hpp"

namespace hqa::internal {

using Json = nlohmann::ordered_json;

Json sample_to_json(const InkSample& sample);
InkSample sample_from_json(const Json& doc);

Json parse_json(std::string_view text, std::string_view what);

inline const Json& require(const Json& obj, const char* key,
                           std::string_view what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(std::string(what) + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

inline double require_number(const Json& obj, const char* key,
                             std::string_view what) {
  const Json& v = require(obj, key, what);
  if (!v.is_number()) {
    throw FormatError(std::string(what) + ": field '" + key +
                      "' is not a number");
  }
  return v.get<double>();
}

inline std::vector<double> number_array(const Json& v, std::string_view what) {
  if (!v.is_array()) throw FormatError(std::string(what) + ": expected array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw FormatError(std::string(what) + ": expected numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace hqa::internal

#endif  // HQA_SRC_JSON_CODEC_HPP_
