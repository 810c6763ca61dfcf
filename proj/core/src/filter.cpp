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

#include "hqa/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hqa/errors.hpp"

namespace hqa {
namespace {

using Complex = std::complex<double>;

struct Zpk {
  std::vector<Complex> zeros;
  std::vector<Complex> poles;
  double gain = 1.0;
};

// Analog prototype with the stopband edge at 1 rad/s.
Zpk cheby2_prototype(int order, double stopband_db) {
  const double pi = std::numbers::pi;
  const double eps = 1.0 / std::sqrt(std::pow(10.0, 0.1 * stopband_db) - 1.0);
  const double mu = std::asinh(1.0 / eps) / order;

  Zpk zpk;
  for (int m = -order + 1; m < order; m += 2) {
    if (m == 0) continue;  // odd orders have one fewer finite zero
    const double s = std::sin(m * pi / (2.0 * order));
    zpk.zeros.push_back(-std::conj(Complex(0.0, 1.0 / s)));
  }
  for (int m = -order + 1; m < order; m += 2) {
    const Complex base = -std::exp(Complex(0.0, pi * m / (2.0 * order)));
    const Complex warped(std::sinh(mu) * base.real(),
                         std::cosh(mu) * base.imag());
    zpk.poles.push_back(1.0 / warped);
  }
  Complex num(1.0, 0.0);
  Complex den(1.0, 0.0);
  for (const auto& p : zpk.poles) num *= -p;
  for (const auto& z : zpk.zeros) den *= -z;
  zpk.gain = (num / den).real();
  return zpk;
}

Zpk bilinear(const Zpk& analog, double fs) {
  const double fs2 = 2.0 * fs;
  Zpk digital;
  Complex num(1.0, 0.0);
  Complex den(1.0, 0.0);
  for (const auto& z : analog.zeros) {
    digital.zeros.push_back((fs2 + z) / (fs2 - z));
    num *= (fs2 - z);
  }
  for (const auto& p : analog.poles) {
    digital.poles.push_back((fs2 + p) / (fs2 - p));
    den *= (fs2 - p);
  }
  // Zeros at infinity map to Nyquist.
  while (digital.zeros.size() < digital.poles.size()) {
    digital.zeros.emplace_back(-1.0, 0.0);
  }
  digital.gain = analog.gain * (num / den).real();
  return digital;
}

// Pairs each complex-conjugate pole pair with the nearest zero pair.
std::vector<Biquad> to_sections(const Zpk& zpk) {
  std::vector<Complex> poles = zpk.poles;
  std::vector<Complex> zeros = zpk.zeros;
  auto upper_half = [](std::vector<Complex> v) {
    std::vector<Complex> complex_part;
    std::vector<Complex> real_part;
    for (const auto& c : v) {
      if (std::abs(c.imag()) < 1e-12) {
        real_part.push_back({c.real(), 0.0});
      } else if (c.imag() > 0) {
        complex_part.push_back(c);
      }
    }
    return std::pair{complex_part, real_part};
  };
  auto [cp, rp] = upper_half(poles);
  auto [cz, rz] = upper_half(zeros);
  // Pair the poles nearest the unit circle first; they get the closest zeros.
  std::sort(cp.begin(), cp.end(), [](const Complex& a, const Complex& b) {
    return std::abs(a) > std::abs(b);
  });

  std::vector<Biquad> sections;
  auto take_zero_pair = [&](const Complex& pole, Complex& z1, Complex& z2) {
    if (!cz.empty()) {
      auto it = std::min_element(cz.begin(), cz.end(),
                                 [&](const Complex& a, const Complex& b) {
                                   return std::abs(a - pole) < std::abs(b - pole);
                                 });
      z1 = *it;
      z2 = std::conj(*it);
      cz.erase(it);
      return 2;
    }
    int n = 0;
    if (!rz.empty()) { z1 = rz.back(); rz.pop_back(); n = 1; }
    if (!rz.empty()) { z2 = rz.back(); rz.pop_back(); n = 2; }
    return n;
  };

  for (const auto& p : cp) {
    Complex z1, z2;
    const int nz = take_zero_pair(p, z1, z2);
    Biquad s;
    s.a1 = -2.0 * p.real();
    s.a2 = std::norm(p);
    if (nz == 2) {
      s.b1 = -(z1 + z2).real();
      s.b2 = (z1 * z2).real();
    } else if (nz == 1) {
      s.b1 = -z1.real();
    }
    sections.push_back(s);
  }
  // Leftover real pole (odd order).
  while (!rp.empty()) {
    Biquad s;
    s.a1 = -rp.back().real();
    rp.pop_back();
    if (!rp.empty()) {
      const double p2 = rp.back().real();
      rp.pop_back();
      s.a2 = s.a1 * -p2;
      s.a1 = s.a1 - p2;
    }
    Complex z1, z2;
    const int nz = take_zero_pair({0.0, 0.0}, z1, z2);
    if (nz == 2) {
      s.b1 = -(z1 + z2).real();
      s.b2 = (z1 * z2).real();
    } else if (nz == 1) {
      s.b1 = -z1.real();
    }
    sections.push_back(s);
  }
  // Sections run from the most damped to the least damped.
  std::reverse(sections.begin(), sections.end());
  if (!sections.empty()) {
    sections.front().b0 *= zpk.gain;
    sections.front().b1 *= zpk.gain;
    sections.front().b2 *= zpk.gain;
  }
  return sections;
}

double section_dc_gain(const Biquad& s) {
  return (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
}

}  // namespace

std::complex<double> SosFilter::response(double freq_hz,
                                         double sample_rate_hz) const {
  const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate_hz;
  const Complex z1 = std::exp(Complex(0.0, -w));
  const Complex z2 = z1 * z1;
  Complex h(1.0, 0.0);
  for (const auto& s : sections) {
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  }
  return h;
}

double SosFilter::gain_db(double freq_hz, double sample_rate_hz) const {
  return 20.0 * std::log10(std::abs(response(freq_hz, sample_rate_hz)));
}

SosFilter design_cheby2_lowpass(int order, double stopband_db,
                                double stopband_edge_hz,
                                double sample_rate_hz) {
  if (order < 1 || stopband_db <= 0.0 || stopband_edge_hz <= 0.0 ||
      stopband_edge_hz >= sample_rate_hz / 2.0) {
    throw InputError("invalid Chebyshev II design parameters");
  }
  Zpk analog = cheby2_prototype(order, stopband_db);
  // Pre-warp the edge so the digital response hits it exactly.
  const double warped =
      2.0 * sample_rate_hz *
      std::tan(std::numbers::pi * stopband_edge_hz / sample_rate_hz);
  for (auto& z : analog.zeros) z *= warped;
  for (auto& p : analog.poles) p *= warped;
  analog.gain *= std::pow(warped, static_cast<double>(analog.poles.size() -
                                                      analog.zeros.size()));

  SosFilter filter;
  filter.sections = to_sections(bilinear(analog, sample_rate_hz));

  // Pin the DC gain to exactly one; the prototype is normalized analytically
  // but the cascade accumulates rounding.
  double dc = 1.0;
  for (const auto& s : filter.sections) dc *= section_dc_gain(s);
  auto& first = filter.sections.front();
  first.b0 /= dc;
  first.b1 /= dc;
  first.b2 /= dc;
  return filter;
}

std::vector<double> sosfilt(const SosFilter& filter,
                            std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  if (y.empty()) return y;
  double level = x.front();
  for (const auto& s : filter.sections) {
    // Transposed direct form II with the state of a settled step input.
    const double g = section_dc_gain(s);
    const double out_level = g * level;
    double z2 = s.b2 * level - s.a2 * out_level;
    double z1 = s.b1 * level - s.a1 * out_level + z2;
    for (double& v : y) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
    level = out_level;
  }
  return y;
}

std::vector<double> filtfilt(const SosFilter& filter,
                             std::span<const double> x) {
  if (x.size() < filter.min_length()) {
    throw InputError("signal shorter than filter warm-up length");
  }
  const std::size_t n = x.size();
  // Longest mirror the signal allows, up to ten warm-up lengths; short pads
  // leave an edge transient on brief strokes.
  const std::size_t pad = std::min(n - 1, 10 * filter.pad_length());
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) {
    ext.push_back(x[n - 1 - i]);
  }

  std::vector<double> fwd = sosfilt(filter, ext);
  std::reverse(fwd.begin(), fwd.end());
  std::vector<double> bwd = sosfilt(filter, fwd);
  std::reverse(bwd.begin(), bwd.end());
  return {bwd.begin() + static_cast<std::ptrdiff_t>(pad),
          bwd.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

}  // namespace hqa
