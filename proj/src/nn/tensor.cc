// src/nn/tensor.cc

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

#include "wcnslu/nn/tensor.h"

#include <cmath>
#include <functional>
#include <numeric>

#include "wcnslu/error.h"

namespace wcnslu::nn {

namespace {

size_t Product(const std::vector<size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), size_t{1}, std::multiplies<>());
}

}  // namespace

std::string ShapeString(const std::vector<size_t>& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

Tensor::Tensor(std::vector<size_t> shape, double fill)
    : shape_(std::move(shape)), values_(Product(shape_), fill) {}

Tensor::Tensor(std::vector<size_t> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != Product(shape_)) {
    throw ShapeError("tensor of shape " + nn::ShapeString(shape_) + " given " +
                     std::to_string(values_.size()) + " values");
  }
}

size_t Tensor::rows() const {
  if (shape_.size() < 2) return 1;
  return values_.size() / shape_.back();
}

size_t Tensor::cols() const { return shape_.empty() ? 1 : shape_.back(); }

void Tensor::Fill(double v) { std::fill(values_.begin(), values_.end(), v); }

void Tensor::Accumulate(const Tensor& other) {
  if (other.size() != size()) {
    throw ShapeError("accumulate " + other.ShapeString() + " into " + ShapeString());
  }
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
}

void Tensor::Reshape(std::vector<size_t> shape) {
  if (Product(shape) != values_.size()) {
    throw ShapeError("cannot reshape " + ShapeString() + " to " + nn::ShapeString(shape));
  }
  shape_ = std::move(shape);
}

bool Tensor::AllFinite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string Tensor::ShapeString() const { return nn::ShapeString(shape_); }

}  // namespace wcnslu::nn
