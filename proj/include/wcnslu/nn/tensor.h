// include/wcnslu/nn/tensor.h

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

#ifndef WCNSLU_NN_TENSOR_H_
#define WCNSLU_NN_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wcnslu::nn {

// Dense row-major array of doubles. Most code treats tensors as matrices:
// a rank-1 tensor of length n behaves as a 1 x n row.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<size_t> shape, double fill = 0.0);
  Tensor(std::vector<size_t> shape, std::vector<double> values);
  Tensor(size_t rows, size_t cols, double fill = 0.0)
      : Tensor(std::vector<size_t>{rows, cols}, fill) {}

  static Tensor Scalar(double v) { return Tensor({1}, std::vector<double>{v}); }
  static Tensor ZerosLike(const Tensor& t) { return Tensor(t.shape_); }

  const std::vector<size_t>& shape() const { return shape_; }
  size_t rank() const { return shape_.size(); }
  size_t size() const { return values_.size(); }
  size_t rows() const;
  size_t cols() const;

  double& operator()(size_t r, size_t c) { return values_[r * cols() + c]; }
  double operator()(size_t r, size_t c) const { return values_[r * cols() + c]; }
  double& operator[](size_t i) { return values_[i]; }
  double operator[](size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> row(size_t r) { return {values_.data() + r * cols(), cols()}; }
  std::span<const double> row(size_t r) const {
    return {values_.data() + r * cols(), cols()};
  }

  void Fill(double v);
  // Element-wise this += other; shapes must hold the same element count.
  void Accumulate(const Tensor& other);
  void Reshape(std::vector<size_t> shape);
  bool AllFinite() const;
  bool SameShape(const Tensor& other) const { return shape_ == other.shape_; }
  std::string ShapeString() const;

  bool operator==(const Tensor& other) const = default;

 private:
  std::vector<size_t> shape_;
  std::vector<double> values_;
};

std::string ShapeString(const std::vector<size_t>& shape);

}  // namespace wcnslu::nn

#endif  // WCNSLU_NN_TENSOR_H_
