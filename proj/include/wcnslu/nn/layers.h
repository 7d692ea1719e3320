// include/wcnslu/nn/layers.h

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

#ifndef WCNSLU_NN_LAYERS_H_
#define WCNSLU_NN_LAYERS_H_

#include <string>
#include <vector>

#include "wcnslu/nn/graph.h"
#include "wcnslu/nn/ops.h"
#include "wcnslu/nn/params.h"
#include "wcnslu/random.h"

namespace wcnslu::nn {

// Parameters are registered under "<prefix>.<part>" names.

// prefix.w [out, in] (fan-in uniform), prefix.b [out] (zeros).
void AddLinear(ParameterStore& store, const std::string& prefix, size_t in, size_t out,
               Rng& rng);
// Bias is optional: prefix.b is used only when registered.
Var ApplyLinear(Graph& g, ParameterStore& store, const std::string& prefix, Var x);

// prefix.wx [4H, in], prefix.wh [4H, H], prefix.b [4H]; gate blocks are
// ordered input, forget, candidate, output.
void AddLstm(ParameterStore& store, const std::string& prefix, size_t in, size_t hidden,
             Rng& rng);
size_t LstmHidden(const ParameterStore& store, const std::string& prefix);

struct LstmParams {
  Var wx, wh, b;
  size_t hidden = 0;
};
LstmParams BindLstm(Graph& g, ParameterStore& store, const std::string& prefix);

struct LstmState {
  Var h;  // [1, H]
  Var c;  // [1, H]
};
LstmState ZeroLstmState(Graph& g, size_t hidden);

LstmState LstmCell(Graph& g, const LstmParams& p, Var x, const LstmState& prev);

// Runs over the rows of xs [T, in]; returns hidden states [T, H] in input
// order regardless of direction.
Var RunLstm(Graph& g, const LstmParams& p, Var xs, bool reverse);
// Forward pass over prefix.fwd and backward pass over prefix.bwd,
// concatenated per step: [T, 2H].
void AddBiLstm(ParameterStore& store, const std::string& prefix, size_t in, size_t hidden,
               Rng& rng);
Var BiLstm(Graph& g, ParameterStore& store, const std::string& prefix, Var xs);

// Scaled dot-product self-attention with head_count heads over [T, d]
// states; q/k/v/o are [d, d] projections, all but k with a bias.
void AddSelfAttention(ParameterStore& store, const std::string& prefix, size_t dim, Rng& rng);
struct AttentionResult {
  Var output;                // [T, d]
  std::vector<Var> weights;  // one [T, T] row-stochastic matrix per head
};
AttentionResult MultiheadSelfAttention(Graph& g, ParameterStore& store,
                                       const std::string& prefix, Var states,
                                       size_t head_count);

}  // namespace wcnslu::nn

#endif  // WCNSLU_NN_LAYERS_H_
