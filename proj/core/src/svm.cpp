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


#include "hqa/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hqa/errors.hpp"

namespace hqa {
namespace {

constexpr std::size_t kFullKernelLimit = 4000;
constexpr double kTau = 1e-12;

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

class Kernel {
 public:
  Kernel(const FeatureMatrix& x, double gamma) : x_(x), gamma_(gamma) {
    const std::size_t n = x.size();
    if (n <= kFullKernelLimit) {
      full_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        full_[i * n + i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
          full_[i * n + j] = full_[j * n + i] = rbf(x[i], x[j], gamma);
        }
      }
    }
  }

  double operator()(std::size_t i, std::size_t j) const {
    if (!full_.empty()) return full_[i * x_.size() + j];
    return i == j ? 1.0 : rbf(x_[i], x_[j], gamma_);
  }

 private:
  const FeatureMatrix& x_;
  double gamma_;
  std::vector<double> full_;
};

void check_matrix(const FeatureMatrix& x) {
  if (x.empty() || x.front().empty()) throw InputError("svm: empty feature matrix");
  for (const auto& row : x) {
    if (row.size() != x.front().size()) throw InputError("svm: ragged feature matrix");
    for (double v : row) {
      if (!std::isfinite(v)) throw InputError("svm: non-finite feature");
    }
  }
}

}  // namespace

Standardizer Standardizer::fit(const FeatureMatrix& x) {
  check_matrix(x);
  const std::size_t d = x.front().size();
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  const double n = static_cast<double>(x.size());
  for (const auto& row : x) {
    for (std::size_t k = 0; k < d; ++k) s.mean[k] += row[k] / n;
  }
  for (std::size_t k = 0; k < d; ++k) {
    double var = 0.0;
    for (const auto& row : x) var += (row[k] - s.mean[k]) * (row[k] - s.mean[k]);
    const double sd = std::sqrt(var / n);
    s.scale[k] = sd > 1e-12 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> x) const {
  if (empty()) return {x.begin(), x.end()};
  if (x.size() != mean.size()) throw InputError("svm: feature dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = (x[k] - mean[k]) / scale[k];
  return out;
}

std::size_t SvmModel::dimension() const {
  return support_vectors.empty() ? standardizer.mean.size()
                                 : support_vectors.front().size();
}

SvmTraining train_svm(const FeatureMatrix& raw, const std::vector<int>& y,
                      const SvmParams& params) {
  check_matrix(raw);
  if (raw.size() != y.size()) throw InputError("svm: label count mismatch");
  if (!(params.c > 0.0)) throw InputError("svm: C must be positive");
  bool pos = false, neg = false;
  for (int label : y) {
    if (label == 1) pos = true;
    else if (label == -1) neg = true;
    else throw InputError("svm: labels must be +1 or -1");
  }
  if (!pos || !neg) throw InputError("svm: training data has a single class");

  SvmTraining out;
  SvmModel& model = out.model;
  model.c = params.c;
  model.gamma = params.gamma > 0.0 ? params.gamma
                                   : 1.0 / static_cast<double>(raw.front().size());
  FeatureMatrix x;
  if (params.standardize) {
    model.standardizer = Standardizer::fit(raw);
    x.reserve(raw.size());
    for (const auto& row : raw) x.push_back(model.standardizer.apply(row));
  } else {
    x = raw;
  }

  const std::size_t n = x.size();
  const Kernel k(x, model.gamma);
  const double c = params.c;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // Q alpha - e
  auto yd = [&](std::size_t t) { return static_cast<double>(y[t]); };
  auto in_up = [&](std::size_t t) {
    return (y[t] == 1 && alpha[t] < c) || (y[t] == -1 && alpha[t] > 0.0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] == 1 && alpha[t] > 0.0) || (y[t] == -1 && alpha[t] < c);
  };

  out.converged = false;
  for (out.iterations = 0; out.iterations < params.max_iterations; ++out.iterations) {
    std::size_t i = n, j = n;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -yd(t) * grad[t];
      if (in_up(t) && v > gmax) { gmax = v; i = t; }
      if (in_low(t) && v < gmin) { gmin = v; j = t; }
    }
    if (i == n || j == n || gmax - gmin < params.tolerance) {
      out.converged = true;
      break;
    }

    // Two-variable subproblem, clipped to the box.
    const double old_i = alpha[i];
    const double old_j = alpha[j];
    const double quad = std::max(k(i, i) + k(j, j) - 2.0 * k(i, j), kTau);
    if (y[i] != y[j]) {
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0 && alpha[j] < 0) { alpha[j] = 0; alpha[i] = diff; }
      else if (diff <= 0 && alpha[i] < 0) { alpha[i] = 0; alpha[j] = -diff; }
      if (diff > 0 && alpha[i] > c) { alpha[i] = c; alpha[j] = c - diff; }
      else if (diff <= 0 && alpha[j] > c) { alpha[j] = c; alpha[i] = c + diff; }
    } else {
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c && alpha[i] > c) { alpha[i] = c; alpha[j] = sum - c; }
      else if (sum <= c && alpha[j] < 0) { alpha[j] = 0; alpha[i] = sum; }
      if (sum > c && alpha[j] > c) { alpha[j] = c; alpha[i] = sum - c; }
      else if (sum <= c && alpha[i] < 0) { alpha[i] = 0; alpha[j] = sum; }
    }
    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += yd(t) * (yd(i) * k(t, i) * di + yd(j) * k(t, j) * dj);
    }
  }

  // rho: mean of y G over free vectors, else the middle of the feasible range.
  double sum_free = 0.0;
  std::size_t n_free = 0;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = yd(t) * grad[t];
    if (alpha[t] > 0.0 && alpha[t] < c) {
      sum_free += yg;
      ++n_free;
    } else if ((alpha[t] >= c && y[t] == -1) || (alpha[t] <= 0.0 && y[t] == 1)) {
      ub = std::min(ub, yg);
    } else {
      lb = std::max(lb, yg);
    }
  }
  const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);
  model.bias = -rho;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support_vectors.push_back(x[t]);
      model.alphas.push_back(yd(t) * alpha[t]);
    }
  }
  out.alpha = alpha;
  out.decision.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    double f = model.bias;
    for (std::size_t s = 0; s < n; ++s) {
      if (alpha[s] > 0.0) f += yd(s) * alpha[s] * k(t, s);
    }
    out.decision[t] = f;
  }
  const PlattFit platt = fit_platt(out.decision, y);
  model.platt_a = platt.a;
  model.platt_b = platt.b;
  return out;
}

double decision(const SvmModel& model, std::span<const double> x) {
  if (x.size() != model.dimension()) throw InputError("svm: feature dimension mismatch");
  const std::vector<double> z = model.standardizer.apply(x);
  double f = model.bias;
  for (std::size_t s = 0; s < model.support_vectors.size(); ++s) {
    f += model.alphas[s] * rbf(z, model.support_vectors[s], model.gamma);
  }
  return f;
}

double platt_probability(double d, double a, double b) {
  const double f = a * d + b;
  // Evaluated on the side that cannot overflow.
  if (f >= 0.0) {
    const double e = std::exp(-f);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(f));
}

double confidence(const SvmModel& model, std::span<const double> x) {
  return platt_probability(decision(model, x), model.platt_a, model.platt_b);
}

PlattFit fit_platt(std::span<const double> dec, std::span<const int> labels) {
  const std::size_t n = dec.size();
  double prior1 = 0.0, prior0 = 0.0;
  for (int l : labels) (l > 0 ? prior1 : prior0) += 1.0;
  const double hi = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo = 1.0 / (prior0 + 2.0);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = labels[i] > 0 ? hi : lo;

  constexpr int kMaxIter = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;
  constexpr double kEps = 1e-5;
  double a = 0.0;
  double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
  auto objective = [&](double aa, double bb) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fa = dec[i] * aa + bb;
      f += fa >= 0 ? t[i] * fa + std::log1p(std::exp(-fa))
                   : (t[i] - 1.0) * fa + std::log1p(std::exp(fa));
    }
    return f;
  };
  double fval = objective(a, b);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fa = dec[i] * a + b;
      double p, q;
      if (fa >= 0) {
        p = std::exp(-fa) / (1.0 + std::exp(-fa));
        q = 1.0 / (1.0 + std::exp(-fa));
      } else {
        p = 1.0 / (1.0 + std::exp(fa));
        q = std::exp(fa) / (1.0 + std::exp(fa));
      }
      const double d2 = p * q;
      h11 += dec[i] * dec[i] * d2;
      h22 += d2;
      h21 += dec[i] * d2;
      const double d1 = t[i] - p;
      g1 += dec[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < kEps && std::abs(g2) < kEps) break;
    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    while (step >= kMinStep) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) break;
  }
  return {a, b};
}

OneVsRest OneVsRest::train(const FeatureMatrix& x, const std::vector<int>& labels,
                           const SvmParams& params) {
  if (x.size() != labels.size()) throw InputError("svm: label count mismatch");
  OneVsRest ovr;
  const std::set<int> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) throw InputError("svm: need at least two classes");
  ovr.classes_.assign(distinct.begin(), distinct.end());
  for (int cls : ovr.classes_) {
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == cls ? 1 : -1;
    ovr.machines_.push_back(train_svm(x, y, params).model);
  }
  return ovr;
}

int OneVsRest::predict(std::span<const double> x) const {
  std::size_t best = 0;
  double best_conf = -1.0;
  for (std::size_t k = 0; k < machines_.size(); ++k) {
    const double conf = confidence(machines_[k], x);
    if (conf > best_conf) {
      best_conf = conf;
      best = k;
    }
  }
  return classes_.at(best);
}

}  // namespace hqa
