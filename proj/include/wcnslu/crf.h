// include/wcnslu/crf.h

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

#ifndef WCNSLU_CRF_H_
#define WCNSLU_CRF_H_

#include <span>
#include <vector>

#include "wcnslu/nn/graph.h"
#include "wcnslu/nn/tensor.h"

namespace wcnslu {

// Linear-chain CRF scores over K tags. A path y_0..y_{T-1} scores
//   start[y_0] + sum_t emission[t][y_t] + sum_t transition[y_{t-1}][y_t]
//   + stop[y_{T-1}].
struct CrfParams {
  nn::Tensor transitions;  // [K, K], from-tag x to-tag
  std::vector<double> start;
  std::vector<double> stop;

  size_t tag_count() const { return start.size(); }
};

double CrfPathScore(const nn::Tensor& emissions, const CrfParams& crf, std::span<const int> tags);
// Forward recursion in log space. emissions is [T, K] with T >= 1.
double CrfLogPartition(const nn::Tensor& emissions, const CrfParams& crf);

struct ViterbiPath {
  std::vector<int> tags;
  double score = 0.0;
};
// Best path; equal scores resolve to the lower tag index.
ViterbiPath CrfViterbi(const nn::Tensor& emissions, const CrfParams& crf);

// log Z - score(gold) as a graph node, with gradients from the
// forward-backward marginals. start/stop are [K] parameters.
nn::Var CrfNegLogLikelihood(nn::Graph& g, nn::Var emissions, nn::Var transitions, nn::Var start,
                            nn::Var stop, std::vector<int> gold);

}  // namespace wcnslu

#endif  // WCNSLU_CRF_H_
