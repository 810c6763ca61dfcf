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


// Binary RBF-kernel support vector machine.
//
// Trained by sequential minimal optimization on the dual with
// maximal-violating-pair working-set selection, so a fixed input always
// yields the same model. Decision values are calibrated to probabilities
// with a Platt sigmoid.

#ifndef HQA_SVM_HPP_
#define HQA_SVM_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace hqa {

using FeatureMatrix = std::vector<std::vector<double>>;

struct SvmParams {
  double c = 10.0;
  double gamma = 0.0;  // <= 0 selects 1 / dimension
  double tolerance = 1e-3;
  long max_iterations = 100000;
  bool standardize = true;
};

// Per-dimension affine map to zero mean and unit variance. Constant
// dimensions keep scale 1.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const FeatureMatrix& x);
  std::vector<double> apply(std::span<const double> x) const;
  bool empty() const { return mean.empty(); }
};

struct SvmModel {
  FeatureMatrix support_vectors;  // in standardized space
  std::vector<double> alphas;     // signed: y_i * alpha_i
  double bias = 0.0;
  double gamma = 1.0;
  double c = 10.0;
  double platt_a = -1.0;
  double platt_b = 0.0;
  Standardizer standardizer;  // empty means identity

  std::size_t dimension() const;
};

struct SvmTraining {
  SvmModel model;
  std::vector<double> alpha;     // unsigned dual variables, one per input
  std::vector<double> decision;  // training decision values
  long iterations = 0;
  bool converged = true;
};

// Labels are +1 / -1. Throws InputError for single-class input, ragged or
// empty features, c <= 0.
SvmTraining train_svm(const FeatureMatrix& x, const std::vector<int>& y,
                      const SvmParams& params = {});

// sum_i alphas_i exp(-gamma |x - sv_i|^2) + bias. Throws InputError on a
// dimension mismatch.
double decision(const SvmModel& model, std::span<const double> x);

// Platt probability of the positive class.
double platt_probability(double decision_value, double a, double b);
double confidence(const SvmModel& model, std::span<const double> x);

struct PlattFit {
  double a = -1.0;
  double b = 0.0;
};
// Regularized-target Newton fit of 1 / (1 + exp(a d + b)).
PlattFit fit_platt(std::span<const double> decision_values,
                   std::span<const int> labels);

// One binary machine per class against the rest; prediction is the class of
// highest confidence, ties to the earliest class.
class OneVsRest {
 public:
  static OneVsRest train(const FeatureMatrix& x, const std::vector<int>& labels,
                         const SvmParams& params = {});

  int predict(std::span<const double> x) const;
  const std::vector<int>& classes() const { return classes_; }
  const std::vector<SvmModel>& machines() const { return machines_; }

 private:
  std::vector<int> classes_;
  std::vector<SvmModel> machines_;
};

}  // namespace hqa

#endif  // HQA_SVM_HPP_
