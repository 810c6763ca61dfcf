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

#ifndef HQA_ERRORS_HPP_
#define HQA_ERRORS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hqa {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The caller handed us something unusable (bad document, wrong dimension,
// degenerate geometry). Tools map this to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed ink / template / manifest document. Carries the offending stroke
// and point index when the problem is local to one point.
class FormatError : public InputError {
 public:
  explicit FormatError(const std::string& what,
                       std::optional<std::size_t> stroke = std::nullopt,
                       std::optional<std::size_t> point = std::nullopt)
      : InputError(Describe(what, stroke, point)),
        stroke_(stroke),
        point_(point) {}

  std::optional<std::size_t> stroke_index() const { return stroke_; }
  std::optional<std::size_t> point_index() const { return point_; }

 private:
  static std::string Describe(const std::string& what,
                              std::optional<std::size_t> stroke,
                              std::optional<std::size_t> point) {
    std::string out = what;
    if (stroke) out += " (stroke " + std::to_string(*stroke);
    if (stroke && point) out += ", point " + std::to_string(*point);
    if (stroke) out += ")";
    return out;
  }

  std::optional<std::size_t> stroke_;
  std::optional<std::size_t> point_;
};

// Geometry or signal that cannot be processed (zero-size sample, zero-length
// trajectory, zero-duration stroke).
class DegenerateInput : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace hqa

#endif  // HQA_ERRORS_HPP_
