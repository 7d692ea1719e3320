// src/nn/params.cc

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

#include "wcnslu/nn/params.h"

#include <cmath>

#include "wcnslu/error.h"

namespace wcnslu::nn {

Tensor& ParameterStore::Add(const std::string& name, Tensor init) {
  if (params_.count(name)) throw ShapeError("parameter '" + name + "' already exists");
  Parameter p;
  p.grad = Tensor::ZerosLike(init);
  p.first_moment = Tensor::ZerosLike(init);
  p.second_moment = Tensor::ZerosLike(init);
  p.value = std::move(init);
  return params_.emplace(name, std::move(p)).first->second.value;
}

Parameter& ParameterStore::Get(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw ShapeError("unknown parameter '" + name + "'");
  return it->second;
}

const Parameter& ParameterStore::Get(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw ShapeError("unknown parameter '" + name + "'");
  return it->second;
}

void ParameterStore::ZeroGrad() {
  for (auto& [name, p] : params_) p.grad.Fill(0.0);
}

void ParameterStore::ScaleGrad(double factor) {
  for (auto& [name, p] : params_) {
    for (double& g : p.grad.values()) g *= factor;
  }
}

double ParameterStore::GradNorm() const {
  double sq = 0.0;
  for (const auto& [name, p] : params_) {
    for (double g : p.grad.values()) sq += g * g;
  }
  return std::sqrt(sq);
}

void ParameterStore::AdamStep(const AdamConfig& c) {
  ++step_;
  const double correction1 = 1.0 - std::pow(c.beta1, static_cast<double>(step_));
  const double correction2 = 1.0 - std::pow(c.beta2, static_cast<double>(step_));
  for (auto& [name, p] : params_) {
    auto value = p.value.values();
    auto grad = p.grad.values();
    auto m = p.first_moment.values();
    auto v = p.second_moment.values();
    for (size_t i = 0; i < value.size(); ++i) {
      m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * grad[i];
      v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * grad[i] * grad[i];
      double m_hat = m[i] / correction1;
      double v_hat = v[i] / correction2;
      value[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

size_t ParameterStore::ParameterCount() const {
  size_t n = 0;
  for (const auto& [name, p] : params_) n += p.value.size();
  return n;
}

void ParameterStore::CopyValuesFrom(const ParameterStore& other) {
  for (auto& [name, p] : params_) {
    const Parameter& src = other.Get(name);
    if (!src.value.SameShape(p.value)) throw ShapeError("snapshot shape mismatch for " + name);
    p.value = src.value;
  }
}

Tensor UniformTensor(std::vector<size_t> shape, double bound, Rng& rng) {
  Tensor t(std::move(shape));
  for (double& v : t.values()) v = rng.Uniform(-bound, bound);
  return t;
}

Tensor FanInTensor(size_t out, size_t in, Rng& rng) {
  return UniformTensor({out, in}, 1.0 / std::sqrt(static_cast<double>(in)), rng);
}

}  // namespace wcnslu::nn
