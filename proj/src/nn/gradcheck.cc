// src/nn/gradcheck.cc

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

#include "wcnslu/nn/gradcheck.h"

#include <algorithm>
#include <cmath>

namespace wcnslu::nn {

GradCheckResult GradCheck(ParameterStore& store, const std::function<Var(Graph&)>& build,
                          double step) {
  store.ZeroGrad();
  {
    Graph g;
    Var loss = build(g);
    g.Backward(loss);
  }
  auto evaluate = [&]() {
    Graph g;
    return g.scalar(build(g));
  };

  GradCheckResult result;
  for (auto& [name, p] : store.entries()) {
    auto values = p.value.values();
    for (size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + step;
      const double plus = evaluate();
      values[i] = saved - step;
      const double minus = evaluate();
      values[i] = saved;
      const double numeric = (plus - minus) / (2.0 * step);
      const double analytic = p.grad[i];
      const double denom = std::max({std::abs(analytic), std::abs(numeric), kGradCheckFloor});
      const double rel = std::abs(analytic - numeric) / denom;
      ++result.coordinates;
      if (rel > result.max_relative_error) {
        result.max_relative_error = rel;
        result.worst_parameter = name;
        result.worst_index = i;
        result.worst_analytic = analytic;
        result.worst_numeric = numeric;
      }
    }
  }
  store.ZeroGrad();
  return result;
}

}  // namespace wcnslu::nn
