// include/wcnslu/nn/graph.h

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

#ifndef WCNSLU_NN_GRAPH_H_
#define WCNSLU_NN_GRAPH_H_

#include <functional>
#include <string>
#include <vector>

#include "wcnslu/nn/params.h"
#include "wcnslu/nn/tensor.h"

namespace wcnslu::nn {

// Handle to a node of a Graph.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Tape for reverse-mode differentiation. Nodes are appended in evaluation
// order; Backward walks them in reverse, and every backward function adds
// (never assigns) into its parents' gradients. Parameter nodes alias the
// store's value and gradient, so several graphs can accumulate into one
// store before an optimizer step. A graph is confined to one thread.
class Graph {
 public:
  using BackwardFn = std::function<void(Graph&, const Tensor& out_grad)>;

  Var Constant(Tensor value);
  // Differentiable leaf owned by the graph.
  Var Input(Tensor value);
  Var Param(ParameterStore& store, const std::string& name);

  // Appends an op node; backward may be empty for non-differentiable ops.
  Var Node(Tensor value, const std::vector<Var>& parents, BackwardFn backward);

  const Tensor& value(Var v) const;
  // Gradient buffer of v, zero-initialized on first access.
  Tensor& grad(Var v);
  bool has_grad(Var v) const;
  bool needs_grad(Var v) const { return nodes_.at(v.id).needs_grad; }
  double scalar(Var v) const { return value(v)[0]; }

  // Seeds d(loss)/d(loss) = 1 and propagates to every reachable node.
  void Backward(Var loss);

  size_t size() const { return nodes_.size(); }

 private:
  struct Entry {
    Tensor value;
    const Tensor* value_ref = nullptr;
    Tensor grad;
    Tensor* grad_ref = nullptr;
    bool grad_ready = false;
    bool needs_grad = false;
    BackwardFn backward;
  };

  std::vector<Entry> nodes_;
};

}  // namespace wcnslu::nn

#endif  // WCNSLU_NN_GRAPH_H_
