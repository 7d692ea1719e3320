// src/nn/graph.cc

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

#include "wcnslu/nn/graph.h"

#include "wcnslu/error.h"

namespace wcnslu::nn {

Var Graph::Constant(Tensor value) {
  Entry e;
  e.value = std::move(value);
  nodes_.push_back(std::move(e));
  return {static_cast<int>(nodes_.size()) - 1};
}

Var Graph::Input(Tensor value) {
  Entry e;
  e.value = std::move(value);
  e.needs_grad = true;
  nodes_.push_back(std::move(e));
  return {static_cast<int>(nodes_.size()) - 1};
}

Var Graph::Param(ParameterStore& store, const std::string& name) {
  Parameter& p = store.Get(name);
  Entry e;
  e.value_ref = &p.value;
  e.grad_ref = &p.grad;
  e.needs_grad = true;
  nodes_.push_back(std::move(e));
  return {static_cast<int>(nodes_.size()) - 1};
}

Var Graph::Node(Tensor value, const std::vector<Var>& parents, BackwardFn backward) {
  Entry e;
  e.value = std::move(value);
  for (Var p : parents) e.needs_grad = e.needs_grad || (p.valid() && nodes_.at(p.id).needs_grad);
  if (e.needs_grad) e.backward = std::move(backward);
  nodes_.push_back(std::move(e));
  return {static_cast<int>(nodes_.size()) - 1};
}

const Tensor& Graph::value(Var v) const {
  const Entry& e = nodes_.at(v.id);
  return e.value_ref ? *e.value_ref : e.value;
}

Tensor& Graph::grad(Var v) {
  Entry& e = nodes_.at(v.id);
  if (e.grad_ref) {
    e.grad_ready = true;
    return *e.grad_ref;
  }
  if (!e.grad_ready) {
    e.grad = Tensor::ZerosLike(value(v));
    e.grad_ready = true;
  }
  return e.grad;
}

bool Graph::has_grad(Var v) const { return nodes_.at(v.id).grad_ready; }

void Graph::Backward(Var loss) {
  if (value(loss).size() != 1) {
    throw ShapeError("backward needs a scalar loss, got " + value(loss).ShapeString());
  }
  grad(loss)[0] += 1.0;
  for (int id = loss.id; id >= 0; --id) {
    Entry& e = nodes_[id];
    if (!e.grad_ready || !e.backward) continue;
    const Tensor& g = e.grad_ref ? *e.grad_ref : e.grad;
    e.backward(*this, g);
  }
}

}  // namespace wcnslu::nn
