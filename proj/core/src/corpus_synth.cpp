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


#include "hqa/corpus_synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "hqa/errors.hpp"
#include "hqa/ink_io.hpp"
#include "json_codec.hpp"

namespace hqa {
namespace {

using internal::Json;

constexpr double kRate = 100.0;
constexpr double kOverlap = 0.3;     // fraction of a piece shared with the next
constexpr double kPulseShape = 2.6;  // p = q before style variation
constexpr int kArcTable = 256;
constexpr int kPulseTable = 1024;

Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

Point2 eval(const Bezier& b, double u) {
  const double v = 1.0 - u;
  return (v * v * v) * b.p[0] + (3 * v * v * u) * b.p[1] + (3 * v * u * u) * b.p[2] +
         (u * u * u) * b.p[3];
}

// Arc-length parameterized polyline of a piece.
struct ArcTable {
  std::vector<Point2> pts;
  std::vector<double> cum;

  explicit ArcTable(const Bezier& b) {
    pts.reserve(kArcTable + 1);
    cum.reserve(kArcTable + 1);
    for (int i = 0; i <= kArcTable; ++i) {
      pts.push_back(eval(b, static_cast<double>(i) / kArcTable));
      cum.push_back(i == 0 ? 0.0 : cum.back() + std::hypot(pts[i].x - pts[i - 1].x,
                                                           pts[i].y - pts[i - 1].y));
    }
  }
  double length() const { return cum.back(); }
  Point2 at(double fraction) const {
    const double s = std::clamp(fraction, 0.0, 1.0) * length();
    if (length() <= 0.0) return pts.front();
    const auto it = std::upper_bound(cum.begin(), cum.end(), s);
    const std::size_t hi = std::min<std::size_t>(it - cum.begin(), cum.size() - 1);
    const std::size_t lo = hi - 1;
    const double span = cum[hi] - cum[lo];
    const double f = span > 0.0 ? (s - cum[lo]) / span : 0.0;
    return pts[lo] + f * (pts[hi] - pts[lo]);
  }
};

// Normalized running integral of x^p (1 - x)^q on [0, 1].
struct PulseTable {
  std::vector<double> cdf;

  PulseTable(double p, double q) : cdf(kPulseTable + 1, 0.0) {
    auto f = [&](double x) { return std::pow(x, p) * std::pow(1.0 - x, q); };
    for (int i = 1; i <= kPulseTable; ++i) {
      const double a = static_cast<double>(i - 1) / kPulseTable;
      const double b = static_cast<double>(i) / kPulseTable;
      cdf[i] = cdf[i - 1] + (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    for (double& c : cdf) c /= cdf.back();
  }
  double at(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double pos = x * kPulseTable;
    const auto i = static_cast<std::size_t>(pos);
    return cdf[i] + (pos - static_cast<double>(i)) * (cdf[i + 1] - cdf[i]);
  }
};

struct Style {
  double scale = 1.0, shear = 0.0, rotation = 0.0, dx = 0.0, dy = 0.0;
  double jitter = 0.0, duration_spread = 0.0, shape_spread = 0.0;
};

Point2 apply_style(const Style& s, Point2 p) {
  constexpr Point2 kCentre{50.0, 60.0};
  Point2 d = p - kCentre;
  d = s.scale * d;
  d.x += s.shear * d.y;
  const double c = std::cos(s.rotation), sn = std::sin(s.rotation);
  return Point2{kCentre.x + c * d.x - sn * d.y + s.dx, kCentre.y + sn * d.x + c * d.y + s.dy};
}

bool is_line(const Bezier& b) {
  const Bezier l = line(b.p[0], b.p[3]);
  return l.p[1].x == b.p[1].x && l.p[1].y == b.p[1].y && l.p[2].x == b.p[2].x &&
         l.p[2].y == b.p[2].y;
}

double path_length(const PenStroke& s) {
  double len = 0.0;
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    len += std::hypot(s.points[i].x - s.points[i - 1].x, s.points[i].y - s.points[i - 1].y);
  }
  return len;
}

std::size_t longest_stroke(const InkSample& s) {
  std::size_t best = 0;
  double best_len = -1.0;
  for (std::size_t i = 0; i < s.strokes.size(); ++i) {
    const double len = path_length(s.strokes[i]);
    if (len > best_len) {
      best_len = len;
      best = i;
    }
  }
  return best;
}

// Arc-length fraction of every point.
std::vector<double> arc_fractions(const PenStroke& s) {
  std::vector<double> f(s.points.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); ++i) {
    f[i] = f[i - 1] + std::hypot(s.points[i].x - s.points[i - 1].x,
                                 s.points[i].y - s.points[i - 1].y);
  }
  const double total = f.empty() ? 0.0 : f.back();
  if (total > 0.0) {
    for (double& x : f) x /= total;
  }
  return f;
}

double smoothstep(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * (3.0 - 2.0 * x);
}

void deform(InkSample& s, double magnitude, std::mt19937_64& rng) {
  PenStroke& st = s.strokes[longest_stroke(s)];
  const auto frac = arc_fractions(st);
  const double amp = magnitude * s.guidelines.band_height() *
                     (std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0);
  // Bulge along the chord normal.
  const Point2 a{st.points.front().x, st.points.front().y};
  const Point2 b{st.points.back().x, st.points.back().y};
  double nx = -(b.y - a.y), ny = b.x - a.x;
  const double len = std::hypot(nx, ny);
  if (len > 1e-9) {
    nx /= len;
    ny /= len;
  } else {
    nx = 1.0;
    ny = 0.0;
  }
  for (std::size_t i = 0; i < st.points.size(); ++i) {
    const double w = std::sin(std::numbers::pi * frac[i]);
    st.points[i].x += amp * w * nx;
    st.points[i].y += amp * w * ny;
  }
}

void exceed(InkSample& s, double magnitude) {
  PenStroke& st = s.strokes[longest_stroke(s)];
  const std::size_t n = st.points.size();
  const double len = path_length(st);
  const InkPoint end = st.points.back();
  const InkPoint& prev = st.points[n - 1 - std::min<std::size_t>(n - 1, std::max<std::size_t>(1, n / 10))];
  double tx = end.x - prev.x, ty = end.y - prev.y;
  const double tn = std::hypot(tx, ty);
  if (tn < 1e-9) return;
  tx /= tn;
  ty /= tn;
  const double t0 = st.points.front().t, t1 = end.t;
  for (auto& p : st.points) {
    const double w = smoothstep(((p.t - t0) / (t1 - t0) - 0.55) / 0.45);
    p.x += magnitude * len * w * tx;
    p.y += magnitude * len * w * ty;
  }
}

void reverse_stroke(PenStroke& st) {
  const double t0 = st.points.front().t, t1 = st.points.back().t;
  std::vector<InkPoint> out(st.points.rbegin(), st.points.rend());
  for (auto& p : out) p.t = t0 + (t1 - p.t);
  st.points = std::move(out);
}

// Lays the strokes out again in the given order, keeping each stroke's
// internal timing and the original pen-up gaps by position.
void retime(InkSample& s, const std::vector<std::size_t>& order) {
  std::vector<double> gaps;
  for (std::size_t i = 1; i < s.strokes.size(); ++i) {
    gaps.push_back(s.strokes[i].points.front().t - s.strokes[i - 1].points.back().t);
  }
  std::vector<PenStroke> out;
  double t = s.strokes.front().points.front().t;
  for (std::size_t k = 0; k < order.size(); ++k) {
    PenStroke st = s.strokes[order[k]];
    const double shift = t - st.points.front().t;
    for (auto& p : st.points) p.t += shift;
    t = st.points.back().t + (k < gaps.size() ? gaps[k] : 0.0);
    out.push_back(std::move(st));
  }
  s.strokes = std::move(out);
}

void jitter_time(InkSample& s, double magnitude, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> freq(4.0, 5.0);
  const double f = freq(rng);
  double offset = 0.0;
  for (auto& st : s.strokes) {
    const double phi = phase(rng);
    const double t0 = st.points.front().t;
    std::vector<double> t(st.points.size());
    t[0] = t0 + offset;
    for (std::size_t i = 1; i < st.points.size(); ++i) {
      const double mid = 0.5 * (st.points[i].t + st.points[i - 1].t) - t0;
      const double speed = 1.0 + magnitude * std::sin(2.0 * std::numbers::pi * f * mid + phi);
      t[i] = t[i - 1] + (st.points[i].t - st.points[i - 1].t) / std::max(speed, 0.05);
    }
    offset = t.back() - st.points.back().t;
    for (std::size_t i = 0; i < t.size(); ++i) st.points[i].t = t[i];
  }
}

std::vector<SymbolSpec> make_specs() {
  using S = SymbolSpec;
  auto L = [](double ax, double ay, double bx, double by) { return line({ax, ay}, {bx, by}); };
  auto C = [](Point2 a, Point2 c1, Point2 c2, Point2 b) { return curve(a, c1, c2, b); };
  const StrokeSpec bowl{{C({88, 62}, {92, 90}, {85, 100}, {55, 100}),
                         C({55, 100}, {30, 100}, {12, 98}, {12, 72})}};
  std::vector<SymbolSpec> specs = {
      S{"alif", Script::kArabicChar, {{{L(50, 2, 50, 100)}}}},
      S{"dal", Script::kArabicChar,
        {{{C({40, 45}, {55, 55}, {68, 75}, {65, 95}), L(65, 95, 25, 98)}}}},
      S{"baa", Script::kArabicChar, {bowl, {{L(50, 118, 54, 123)}}}},
      S{"taa", Script::kArabicChar, {bowl, {{L(38, 22, 42, 27)}}, {{L(58, 22, 62, 27)}}}},
      S{"noon", Script::kArabicChar,
        {{{C({78, 55}, {88, 95}, {80, 125}, {50, 125}),
           C({50, 125}, {22, 125}, {15, 100}, {22, 70})}},
         {{L(48, 28, 52, 33)}}}},
      S{"kaf", Script::kArabicChar,
        {{{L(75, 0, 75, 100), L(75, 100, 20, 100)}},
         {{C({42, 48}, {62, 44}, {62, 66}, {42, 72})}}}},
      S{"A", Script::kLatinChar, {{{L(20, 100, 50, 0), L(50, 0, 80, 100)}}, {{L(32, 62, 68, 62)}}}},
      S{"C", Script::kLatinChar,
        {{{C({80, 15}, {60, -5}, {25, 5}, {22, 50}), C({22, 50}, {20, 95}, {60, 105}, {82, 85})}}}},
      S{"D", Script::kLatinChar,
        {{{L(28, 0, 28, 100)}}, {{C({28, 0}, {95, 0}, {95, 100}, {28, 100})}}}},
      S{"E", Script::kLatinChar,
        {{{L(75, 0, 28, 0), L(28, 0, 28, 100), L(28, 100, 75, 100)}}, {{L(28, 50, 65, 50)}}}},
      S{"H", Script::kLatinChar,
        {{{L(25, 0, 25, 100)}}, {{L(75, 0, 75, 100)}}, {{L(25, 50, 75, 50)}}}},
      S{"L", Script::kLatinChar, {{{L(30, 0, 30, 100), L(30, 100, 78, 100)}}}},
      S{"1", Script::kDigit, {{{L(38, 22, 55, 0), L(55, 0, 55, 100)}}}},
      S{"4", Script::kDigit, {{{L(60, 0, 18, 65), L(18, 65, 80, 65)}}, {{L(62, 30, 62, 100)}}}},
      S{"7", Script::kDigit, {{{L(25, 0, 78, 0), L(78, 0, 42, 100)}}}},
      S{"plus", Script::kSymbol, {{{L(50, 30, 50, 90)}}, {{L(20, 60, 80, 60)}}}},
      S{"dollar", Script::kSymbol,
        {{{C({75, 18}, {55, 0}, {15, 12}, {40, 45}), C({40, 45}, {65, 62}, {90, 85}, {28, 95})}},
         {{L(50, 2, 50, 110)}}}},
  };
  return specs;
}

constexpr std::array<std::pair<ErrorKind, std::string_view>, 7> kKindNames = {{
    {ErrorKind::kOmitStroke, "omit_stroke"},
    {ErrorKind::kDeformShape, "deform_shape"},
    {ErrorKind::kExceedStroke, "exceed_stroke"},
    {ErrorKind::kReverseDirection, "reverse_direction"},
    {ErrorKind::kSwapOrder, "swap_order"},
    {ErrorKind::kBaselineOverflow, "baseline_overflow"},
    {ErrorKind::kKinematicJitter, "kinematic_jitter"},
}};

std::string file_stem(const std::string& target, int category, const std::string& split, int i) {
  return target + "/" + split + "_c" + std::to_string(category) + "_" + std::to_string(i) + ".json";
}

}  // namespace

Bezier line(Point2 a, Point2 b) {
  return Bezier{{a, a + (1.0 / 3.0) * (b - a), a + (2.0 / 3.0) * (b - a), b}};
}

Bezier curve(Point2 a, Point2 c1, Point2 c2, Point2 b) { return Bezier{{a, c1, c2, b}}; }

bool SymbolSpec::valid() const {
  if (target.empty() || strokes.empty()) return false;
  for (const auto& s : strokes) {
    if (s.pieces.empty()) return false;
    for (const auto& b : s.pieces) {
      for (const auto& p : b.p) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
      }
    }
  }
  return true;
}

std::span<const SymbolSpec> starter_specs() {
  static const std::vector<SymbolSpec> specs = make_specs();
  return specs;
}

const SymbolSpec* find_spec(std::string_view target) {
  for (const auto& s : starter_specs()) {
    if (s.target == target) return &s;
  }
  return nullptr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

InkSample synth_sample(const SymbolSpec& spec, std::uint64_t style_seed, double noise_level,
                       bool style) {
  if (!spec.valid()) throw InputError("invalid symbol spec '" + spec.target + "'");
  std::mt19937_64 rng(style_seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Style st;
  if (style) {
    st.scale = 1.0 + 0.07 * u(rng);
    st.shear = 0.08 * u(rng);
    st.rotation = 0.05 * u(rng);
    st.dx = 3.0 * u(rng);
    st.dy = 3.0 * u(rng);
    st.jitter = 1.5;
    st.duration_spread = 0.15;
    st.shape_spread = 0.1;
  } else {
    noise_level = 0.0;
  }
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> gap(0.15, 0.35);

  InkSample out;
  out.meta.script = spec.script;
  out.meta.target = spec.target;
  double t_start = 0.0;
  for (const auto& stroke : spec.strokes) {
    // Shared vertices move together so pieces stay connected.
    std::vector<Point2> vjit(stroke.pieces.size() + 1);
    for (auto& v : vjit) v = {st.jitter * u(rng), st.jitter * u(rng)};
    std::vector<ArcTable> arcs;
    std::vector<PulseTable> pulses;
    std::vector<double> starts, durations;
    double t = 0.0;
    for (std::size_t k = 0; k < stroke.pieces.size(); ++k) {
      Bezier b = stroke.pieces[k];
      b.p[0] = apply_style(st, b.p[0]) + vjit[k];
      b.p[3] = apply_style(st, b.p[3]) + vjit[k + 1];
      for (int c : {1, 2}) {
        b.p[c] = apply_style(st, b.p[c]) + Point2{st.jitter * u(rng), st.jitter * u(rng)};
      }
      if (is_line(stroke.pieces[k])) b = line(b.p[0], b.p[3]);  // stays straight
      arcs.emplace_back(b);
      const double d = (0.18 + 0.0045 * arcs.back().length()) *
                       (1.0 + st.duration_spread * u(rng));
      pulses.emplace_back(kPulseShape * (1.0 + st.shape_spread * u(rng)),
                          kPulseShape * (1.0 + st.shape_spread * u(rng)));
      starts.push_back(t);
      durations.push_back(d);
      t += (1.0 - kOverlap) * d;
    }
    double t_end = 0.0;
    for (std::size_t k = 0; k < arcs.size(); ++k) t_end = std::max(t_end, starts[k] + durations[k]);
    const auto n = static_cast<std::size_t>(std::floor(t_end * kRate + 1e-9));
    PenStroke pen;
    const Point2 origin = arcs.front().at(0.0);
    for (std::size_t i = 0; i <= n + 1; ++i) {
      double tl = static_cast<double>(i) / kRate;
      if (i == n + 1) {
        if (t_end - static_cast<double>(n) / kRate < 1e-6) break;
        tl = t_end;
      }
      Point2 p = origin;
      for (std::size_t k = 0; k < arcs.size(); ++k) {
        const double f = pulses[k].at((tl - starts[k]) / durations[k]);
        p = p + (arcs[k].at(f) - arcs[k].at(0.0));
      }
      pen.points.push_back({p.x + noise_level * noise(rng), p.y + noise_level * noise(rng),
                            t_start + tl});
    }
    t_start = pen.points.back().t + (style ? gap(rng) : 0.25);
    out.strokes.push_back(std::move(pen));
  }
  return out;
}

std::string_view to_string(ErrorKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "deform_shape";
}

std::optional<ErrorKind> parse_error_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

Criterion criterion_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kOmitStroke:
    case ErrorKind::kDeformShape:
    case ErrorKind::kExceedStroke: return Criterion::kShape;
    case ErrorKind::kReverseDirection: return Criterion::kDirection;
    case ErrorKind::kSwapOrder: return Criterion::kOrder;
    case ErrorKind::kBaselineOverflow: return Criterion::kPosition;
    case ErrorKind::kKinematicJitter: return Criterion::kKinematic;
  }
  return Criterion::kShape;
}

int class_of(ErrorKind kind) {
  switch (criterion_of(kind)) {
    case Criterion::kShape: return 2;
    case Criterion::kOrder: return 3;
    case Criterion::kDirection: return 4;
    case Criterion::kPosition: return 5;
    case Criterion::kKinematic: return 6;
  }
  return 1;
}

ErrorMode ErrorMode::standard(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDeformShape: return {kind, 0.3};
    case ErrorKind::kExceedStroke: return {kind, 0.4};
    case ErrorKind::kBaselineOverflow: return {kind, 0.5};
    case ErrorKind::kKinematicJitter: return {kind, 0.6};
    default: return {kind, 1.0};
  }
}

bool applicable(ErrorKind kind, const InkSample& sample) {
  if (kind == ErrorKind::kOmitStroke || kind == ErrorKind::kSwapOrder) {
    return sample.strokes.size() >= 2;
  }
  return !sample.strokes.empty();
}

InkSample perturb(const InkSample& sample, const ErrorMode& mode, std::uint64_t seed) {
  if (!(mode.magnitude >= 0.0) || !std::isfinite(mode.magnitude)) {
    throw InputError("perturbation magnitude must be finite and >= 0");
  }
  if (!applicable(mode.kind, sample)) {
    throw InputError(std::string(to_string(mode.kind)) + " needs at least two strokes");
  }
  InkSample out = sample;
  if (mode.magnitude == 0.0) return out;
  std::mt19937_64 rng(seed);
  switch (mode.kind) {
    case ErrorKind::kOmitStroke: {
      std::uniform_int_distribution<std::size_t> pick(0, out.strokes.size() - 1);
      out.strokes.erase(out.strokes.begin() + static_cast<std::ptrdiff_t>(pick(rng)));
      break;
    }
    case ErrorKind::kDeformShape:
      deform(out, mode.magnitude, rng);
      break;
    case ErrorKind::kExceedStroke:
      exceed(out, mode.magnitude);
      break;
    case ErrorKind::kReverseDirection: {
      // Longest strokes first; magnitude is the reversed fraction.
      std::vector<std::size_t> idx(out.strokes.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return path_length(out.strokes[a]) > path_length(out.strokes[b]);
      });
      const auto count = static_cast<std::size_t>(
          std::ceil(std::min(mode.magnitude, 1.0) * static_cast<double>(idx.size())));
      for (std::size_t k = 0; k < count; ++k) reverse_stroke(out.strokes[idx[k]]);
      break;
    }
    case ErrorKind::kSwapOrder: {
      std::vector<std::size_t> order(out.strokes.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::swap(order.front(), order.back());
      retime(out, order);
      break;
    }
    case ErrorKind::kBaselineOverflow: {
      const double dy = mode.magnitude * out.guidelines.band_height();
      for (auto& st : out.strokes) {
        for (auto& p : st.points) p.y += dy;
      }
      break;
    }
    case ErrorKind::kKinematicJitter:
      jitter_time(out, std::min(mode.magnitude, 0.9), rng);
      break;
  }
  return out;
}

std::optional<Criterion> CorpusEntry::error_criterion() const {
  if (!mode) return std::nullopt;
  return criterion_of(*mode);
}

bool CorpusSizes::valid() const { return train_correct >= 0 && train_wrong >= 0 && test >= 0; }

Corpus build_corpus(std::span<const SymbolSpec> specs, const CorpusSizes& sizes,
                    std::uint64_t seed) {
  if (!sizes.valid()) throw InputError("corpus sizes must be >= 0");
  Corpus corpus;
  corpus.seed = seed;
  for (std::size_t si = 0; si < specs.size(); ++si) {
    const SymbolSpec& spec = specs[si];
    // Category 0 is the correct set, k + 1 the k-th error kind.
    for (int category = 0; category <= static_cast<int>(kAllErrorKinds.size()); ++category) {
      std::optional<ErrorKind> kind;
      if (category > 0) {
        kind = kAllErrorKinds[category - 1];
        if (spec.strokes.size() < 2 &&
            (*kind == ErrorKind::kOmitStroke || *kind == ErrorKind::kSwapOrder)) {
          continue;
        }
      }
      for (const std::string split : {"train", "test"}) {
        const int count = split == "test" ? sizes.test
                                          : (kind ? sizes.train_wrong : sizes.train_correct);
        for (int i = 0; i < count; ++i) {
          const std::uint64_t key = (static_cast<std::uint64_t>(si) << 40) ^
                                    (static_cast<std::uint64_t>(category) << 32) ^
                                    (split == "test" ? 1ULL << 31 : 0ULL) ^
                                    static_cast<std::uint64_t>(i);
          CorpusEntry e;
          e.target = spec.target;
          e.split = split;
          e.mode = kind;
          e.path = file_stem(spec.target, category, split, i);
          e.sample = synth_sample(spec, derive_seed(seed, key));
          e.sample.meta.writer_id = "synth";
          if (kind) {
            e.sample = perturb(e.sample, ErrorMode::standard(*kind), derive_seed(seed, ~key));
            e.class_index = class_of(*kind);
            e.criteria[static_cast<std::size_t>(criterion_of(*kind))] = false;
          }
          corpus.entries.push_back(std::move(e));
        }
      }
    }
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  Json entries = Json::array();
  for (const auto& e : corpus.entries) {
    const auto file = dir / e.path;
    std::filesystem::create_directories(file.parent_path());
    save_sample(e.sample, file);
    Json criteria = Json::object();
    for (Criterion c : kAllCriteria) {
      criteria[std::string(to_string(c))] = e.criteria[static_cast<std::size_t>(c)];
    }
    Json j = {{"path", e.path},
              {"target", e.target},
              {"class_index", e.class_index},
              {"criteria", criteria},
              {"split", e.split}};
    if (e.mode) {
      j["mode"] = std::string(to_string(*e.mode));
      j["error_criterion"] = std::string(to_string(criterion_of(*e.mode)));
    }
    entries.push_back(std::move(j));
  }
  const Json doc = {{"seed", corpus.seed}, {"entries", entries}};
  write_text_file(dir / "manifest.json", doc.dump(2) + "\n");
}

Corpus load_corpus(const std::filesystem::path& manifest) {
  const Json doc = internal::parse_json(read_text_file(manifest), "manifest");
  constexpr std::string_view kWhat = "manifest";
  Corpus corpus;
  const Json& seed = internal::require(doc, "seed", kWhat);
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw FormatError("manifest: 'seed' must be an integer");
  }
  corpus.seed = seed.get<std::uint64_t>();
  const Json& entries = internal::require(doc, "entries", kWhat);
  if (!entries.is_array()) throw FormatError("manifest: 'entries' must be an array");
  const auto base = manifest.parent_path();
  for (const auto& j : entries) {
    CorpusEntry e;
    const Json& path = internal::require(j, "path", kWhat);
    if (!path.is_string()) throw FormatError("manifest: 'path' must be a string");
    e.path = path.get<std::string>();
    e.class_index = static_cast<int>(internal::require_number(j, "class_index", kWhat));
    if (e.class_index < 1 || e.class_index > 6) {
      throw FormatError("manifest: class_index outside 1..6");
    }
    const Json& split = internal::require(j, "split", kWhat);
    if (!split.is_string() || (split != "train" && split != "test")) {
      throw FormatError("manifest: split must be 'train' or 'test'");
    }
    e.split = split.get<std::string>();
    const Json& criteria = internal::require(j, "criteria", kWhat);
    for (Criterion c : kAllCriteria) {
      const Json& bit = internal::require(criteria, std::string(to_string(c)).c_str(), kWhat);
      if (!bit.is_boolean()) throw FormatError("manifest: criteria values must be booleans");
      e.criteria[static_cast<std::size_t>(c)] = bit.get<bool>();
    }
    if (j.contains("mode")) {
      const auto kind = parse_error_kind(j.at("mode").get<std::string>());
      if (!kind) throw FormatError("manifest: unknown mode");
      e.mode = kind;
    }
    e.sample = load_sample(base / e.path);
    e.target = j.contains("target") ? j.at("target").get<std::string>() : e.sample.meta.target;
    corpus.entries.push_back(std::move(e));
  }
  return corpus;
}

}  // namespace hqa
