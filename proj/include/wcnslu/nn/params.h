// include/wcnslu/nn/params.h

// Copyright 2026  The wcnslu Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef WCNSLU_NN_PARAMS_H_
#define WCNSLU_NN_PARAMS_H_

#include <cstdint>
#include <map>
#include <string>

#include "wcnslu/nn/tensor.h"
#include "wcnslu/random.h"

namespace wcnslu::nn {

struct Parameter {
  Tensor value;
  Tensor grad;
  Tensor first_moment;
  Tensor second_moment;
};

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Named parameters with their gradients and Adam state. Iteration order is
// the lexicographic order of names, which fixes the update order.
class ParameterStore {
 public:
  Tensor& Add(const std::string& name, Tensor init);
  bool Has(const std::string& name) const { return params_.count(name) > 0; }
  Parameter& Get(const std::string& name);
  const Parameter& Get(const std::string& name) const;
  const std::map<std::string, Parameter>& entries() const { return params_; }
  std::map<std::string, Parameter>& entries() { return params_; }

  void ZeroGrad();
  void ScaleGrad(double factor);
  double GradNorm() const;
  // Bias-corrected Adam over every parameter.
  void AdamStep(const AdamConfig& config);
  long step() const { return step_; }
  size_t ParameterCount() const;

  // Value-only snapshot restore (moments and step are kept).
  void CopyValuesFrom(const ParameterStore& other);

 private:
  std::map<std::string, Parameter> params_;
  long step_ = 0;
};

// uniform(-bound, bound)
Tensor UniformTensor(std::vector<size_t> shape, double bound, Rng& rng);
// uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for a [out, in] projection.
Tensor FanInTensor(size_t out, size_t in, Rng& rng);

}  // namespace wcnslu::nn

#endif  // WCNSLU_NN_PARAMS_H_
