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

// IIR low-pass design (Chebyshev type II) in second-order sections and
// zero-phase forward-backward filtering.

#ifndef HQA_FILTER_HPP_
#define HQA_FILTER_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hqa {

// y[n] = b0 x[n] + b1 x[n-1] + b2 x[n-2] - a1 y[n-1] - a2 y[n-2]
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

struct SosFilter {
  std::vector<Biquad> sections;

  std::complex<double> response(double freq_hz, double sample_rate_hz) const;
  double gain_db(double freq_hz, double sample_rate_hz) const;

  // Minimum mirror padding for filtfilt; inputs must be longer than this.
  std::size_t pad_length() const { return 3 * (2 * sections.size() + 1); }
  std::size_t min_length() const { return pad_length() + 1; }
};

// Chebyshev type II low-pass. `stopband_edge_hz` is where the response first
// reaches `stopband_db` of attenuation; the passband is monotone below it.
SosFilter design_cheby2_lowpass(int order, double stopband_db,
                                double stopband_edge_hz, double sample_rate_hz);

// One pass with steady-state initial conditions scaled by the first sample.
std::vector<double> sosfilt(const SosFilter& filter, std::span<const double> x);

// Zero-phase filtering: mirror (even) padding, forward pass, backward pass.
// Throws InputError if x.size() < filter.min_length().
std::vector<double> filtfilt(const SosFilter& filter, std::span<const double> x);

}  // namespace hqa

#endif  // HQA_FILTER_HPP_
