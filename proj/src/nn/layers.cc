// src/nn/layers.cc

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

#include "wcnslu/nn/layers.h"

#include <cmath>

#include "wcnslu/error.h"

namespace wcnslu::nn {

namespace {
constexpr double kRecurrentInit = 0.08;
}

void AddLinear(ParameterStore& store, const std::string& prefix, size_t in, size_t out,
               Rng& rng) {
  store.Add(prefix + ".w", FanInTensor(out, in, rng));
  store.Add(prefix + ".b", Tensor({out}));
}

Var ApplyLinear(Graph& g, ParameterStore& store, const std::string& prefix, Var x) {
  Var b = store.Has(prefix + ".b") ? g.Param(store, prefix + ".b") : Var{};
  return Linear(g, x, g.Param(store, prefix + ".w"), b);
}

void AddLstm(ParameterStore& store, const std::string& prefix, size_t in, size_t hidden,
             Rng& rng) {
  store.Add(prefix + ".wx", UniformTensor({4 * hidden, in}, kRecurrentInit, rng));
  store.Add(prefix + ".wh", UniformTensor({4 * hidden, hidden}, kRecurrentInit, rng));
  store.Add(prefix + ".b", Tensor({4 * hidden}));
}

size_t LstmHidden(const ParameterStore& store, const std::string& prefix) {
  return store.Get(prefix + ".wh").value.cols();
}

LstmParams BindLstm(Graph& g, ParameterStore& store, const std::string& prefix) {
  LstmParams p;
  p.wx = g.Param(store, prefix + ".wx");
  p.wh = g.Param(store, prefix + ".wh");
  p.b = g.Param(store, prefix + ".b");
  p.hidden = g.value(p.wh).cols();
  if (g.value(p.wh).rows() != 4 * p.hidden) {
    throw ShapeError("LSTM '" + prefix + "' recurrent weights " + g.value(p.wh).ShapeString());
  }
  return p;
}

LstmState ZeroLstmState(Graph& g, size_t hidden) {
  return {g.Constant(Tensor(1, hidden)), g.Constant(Tensor(1, hidden))};
}

namespace {

LstmState CellFromInputGates(Graph& g, const LstmParams& p, Var input_gates,
                             const LstmState& prev) {
  const size_t H = p.hidden;
  if (g.value(prev.h).size() != H || g.value(prev.c).size() != H) {
    throw ShapeError("LSTM state " + g.value(prev.h).ShapeString() + " for hidden size " +
                     std::to_string(H));
  }
  Var gates = Add(g, input_gates, Linear(g, prev.h, p.wh));
  Var i = Sigmoid(g, SliceCols(g, gates, 0, H));
  Var f = Sigmoid(g, SliceCols(g, gates, H, H));
  Var cand = Tanh(g, SliceCols(g, gates, 2 * H, H));
  Var o = Sigmoid(g, SliceCols(g, gates, 3 * H, H));
  Var c = Add(g, Mul(g, f, prev.c), Mul(g, i, cand));
  Var h = Mul(g, o, Tanh(g, c));
  return {h, c};
}

}  // namespace

LstmState LstmCell(Graph& g, const LstmParams& p, Var x, const LstmState& prev) {
  if (g.value(x).cols() != g.value(p.wx).cols()) {
    throw ShapeError("LSTM input " + g.value(x).ShapeString() + " vs weights " +
                     g.value(p.wx).ShapeString());
  }
  return CellFromInputGates(g, p, Linear(g, x, p.wx, p.b), prev);
}

Var RunLstm(Graph& g, const LstmParams& p, Var xs, bool reverse) {
  const size_t T = g.value(xs).rows();
  if (g.value(xs).cols() != g.value(p.wx).cols()) {
    throw ShapeError("LSTM input " + g.value(xs).ShapeString() + " vs weights " +
                     g.value(p.wx).ShapeString());
  }
  Var projected = Linear(g, xs, p.wx, p.b);
  LstmState state = ZeroLstmState(g, p.hidden);
  std::vector<Var> outputs(T);
  for (size_t step = 0; step < T; ++step) {
    size_t t = reverse ? T - 1 - step : step;
    state = CellFromInputGates(g, p, SliceRows(g, projected, t, 1), state);
    outputs[t] = state.h;
  }
  return ConcatRows(g, outputs);
}

void AddBiLstm(ParameterStore& store, const std::string& prefix, size_t in, size_t hidden,
               Rng& rng) {
  AddLstm(store, prefix + ".fwd", in, hidden, rng);
  AddLstm(store, prefix + ".bwd", in, hidden, rng);
}

Var BiLstm(Graph& g, ParameterStore& store, const std::string& prefix, Var xs) {
  Var fwd = RunLstm(g, BindLstm(g, store, prefix + ".fwd"), xs, false);
  Var bwd = RunLstm(g, BindLstm(g, store, prefix + ".bwd"), xs, true);
  return ConcatCols(g, {fwd, bwd});
}

void AddSelfAttention(ParameterStore& store, const std::string& prefix, size_t dim, Rng& rng) {
  AddLinear(store, prefix + ".q", dim, dim, rng);
  // A key bias shifts every score of a query equally, which the softmax
  // cancels; it would be a parameter without gradient.
  store.Add(prefix + ".k.w", FanInTensor(dim, dim, rng));
  AddLinear(store, prefix + ".v", dim, dim, rng);
  AddLinear(store, prefix + ".o", dim, dim, rng);
}

AttentionResult MultiheadSelfAttention(Graph& g, ParameterStore& store,
                                       const std::string& prefix, Var states,
                                       size_t head_count) {
  const size_t d = g.value(states).cols();
  if (head_count == 0 || d % head_count != 0) {
    throw ShapeError("attention dimension " + std::to_string(d) + " not divisible by " +
                     std::to_string(head_count) + " heads");
  }
  const size_t dh = d / head_count;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  Var q = ApplyLinear(g, store, prefix + ".q", states);
  Var k = ApplyLinear(g, store, prefix + ".k", states);
  Var v = ApplyLinear(g, store, prefix + ".v", states);
  AttentionResult result;
  std::vector<Var> heads;
  for (size_t h = 0; h < head_count; ++h) {
    Var qh = SliceCols(g, q, h * dh, dh);
    Var kh = SliceCols(g, k, h * dh, dh);
    Var vh = SliceCols(g, v, h * dh, dh);
    Var weights = SoftmaxRows(g, Scale(g, MatMulNT(g, qh, kh), scale));
    result.weights.push_back(weights);
    heads.push_back(MatMul(g, weights, vh));
  }
  Var joined = head_count == 1 ? heads[0] : ConcatCols(g, heads);
  result.output = ApplyLinear(g, store, prefix + ".o", joined);
  return result;
}

}  // namespace wcnslu::nn
