// include/wcnslu/nn/ops.h

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

#ifndef WCNSLU_NN_OPS_H_
#define WCNSLU_NN_OPS_H_

#include <span>
#include <vector>

#include "wcnslu/nn/graph.h"

namespace wcnslu::nn {

// Plain numeric kernels.
double LogSumExp(std::span<const double> x);
std::vector<double> Softmax(std::span<const double> x);

struct CrossEntropy {
  double loss = 0.0;
  std::vector<double> grad;  // softmax(logits) - onehot(target)
};
// Throws ShapeError when target is outside [0, logits.size()).
CrossEntropy SoftmaxCrossEntropy(std::span<const double> logits, int target);

// Differentiable ops. Matrices are [rows, cols]; a rank-1 tensor of length
// n is treated as [1, n].
Var MatMul(Graph& g, Var a, Var b);     // a b
Var MatMulNT(Graph& g, Var a, Var b);   // a b^T
// x w^T + b for w of shape [out, in]; b may be invalid (no bias).
Var Linear(Graph& g, Var x, Var w, Var b = {});
Var Add(Graph& g, Var a, Var b);
Var AddRow(Graph& g, Var a, Var row);  // broadcast a [1, n] row over a
Var Mul(Graph& g, Var a, Var b);       // element-wise
Var Scale(Graph& g, Var a, double factor);
Var Sigmoid(Graph& g, Var a);
Var Tanh(Graph& g, Var a);
Var Relu(Graph& g, Var a);
Var SliceCols(Graph& g, Var a, size_t start, size_t count);
Var SliceRows(Graph& g, Var a, size_t start, size_t count);
Var ConcatCols(Graph& g, const std::vector<Var>& parts);
Var ConcatRows(Graph& g, const std::vector<Var>& parts);
// Rows of table selected by ids.
Var Gather(Graph& g, Var table, std::vector<int> ids);
Var Reshape(Graph& g, Var a, std::vector<size_t> shape);
Var RepeatRows(Graph& g, Var row, size_t count);    // [1, n] -> [count, n]
Var RepeatEachRow(Graph& g, Var a, size_t count);   // [m, n] -> [m*count, n]
Var MeanRows(Graph& g, Var a);                      // [m, n] -> [1, n]
Var SoftmaxRows(Graph& g, Var a);
Var Sum(Graph& g, Var a);
// Sum over rows of -log softmax(row)[target]; rows with target < 0 are
// skipped.
Var SoftmaxCrossEntropy(Graph& g, Var logits, std::vector<int> targets);
// Same-padded window stacking: row t of the result concatenates rows
// t - (width-1)/2 ... t + width/2 of a, zeros outside. [T, d] -> [T, width*d].
Var Unfold(Graph& g, Var a, size_t width);
Var WeightedSum(Graph& g, const std::vector<Var>& scalars, const std::vector<double>& weights);

}  // namespace wcnslu::nn

#endif  // WCNSLU_NN_OPS_H_
