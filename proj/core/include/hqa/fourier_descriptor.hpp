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


// Fourier descriptors of the angular signature.
//
// A trajectory is resampled to equal arc-length steps and described by the
// tangent inclination theta(l) as a function of the normalized abscissa
// l in (0, 2 pi]. The truncated series
//
//   theta(l) ~ a0 + sum_j (aj cos(j l) + bj sin(j l)),  j = 1..8
//
// is the shape descriptor.

#ifndef HQA_FOURIER_DESCRIPTOR_HPP_
#define HQA_FOURIER_DESCRIPTOR_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hqa/ink.hpp"
#include "hqa/preprocess.hpp"

namespace hqa {

inline constexpr int kFdmHarmonics = 8;
inline constexpr std::size_t kSignatureSegments = 128;

// One entry per resampled segment M(i-1) -> M(i), i = 1..count.
struct Signature {
  std::vector<double> ell;    // abscissa at M(i); ell.back() == 2 pi
  std::vector<double> theta;  // unwrapped inclination of the segment
  std::vector<double> dl;     // segment length, normalized units of ell

  std::size_t size() const { return theta.size(); }
};

struct FdmVector {
  double a0 = 0.0;
  std::array<double, kFdmHarmonics> a{};  // a[j-1] = aj
  std::array<double, kFdmHarmonics> b{};

  static constexpr std::size_t kDim = 1 + 2 * kFdmHarmonics;
  std::array<double, kDim> flat() const;
};

// Signature of a single polyline. Throws DegenerateInput for zero length or
// fewer than 16 segments.
Signature signature(std::span<const Point2> polyline,
                    std::size_t segments = kSignatureSegments);

// Signature of the pen-down strokes concatenated in drawn order. Pen-up
// jumps count toward arc length but hold the previous inclination.
Signature signature(const InkSample& sample,
                    std::size_t segments = kSignatureSegments);

// Abscissas are taken from the running sum of dl, rescaled to end at 2 pi.
FdmVector fdm_coeffs(const Signature& sig, int harmonics = kFdmHarmonics);

// Series evaluated at each abscissa, truncated at `harmonics`.
std::vector<double> reconstruct(const FdmVector& coeffs,
                                std::span<const double> ell,
                                int harmonics = kFdmHarmonics);

// Classifier input: a0 enters as (cos a0, sin a0) so inclinations near +-pi
// stay close; then a1..a8, b1..b8.
inline constexpr std::size_t kFdmFeatureDim = FdmVector::kDim + 1;
std::vector<double> fdm_features(const FdmVector& coeffs);

}  // namespace hqa

#endif  // HQA_FOURIER_DESCRIPTOR_HPP_
