// include/wcnslu/nn/gradcheck.h

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

#ifndef WCNSLU_NN_GRADCHECK_H_
#define WCNSLU_NN_GRADCHECK_H_

#include <functional>
#include <string>

#include "wcnslu/nn/graph.h"

namespace wcnslu::nn {

inline constexpr double kGradCheckFloor = 1e-6;

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  size_t coordinates = 0;
};

// Compares the analytic gradient of a scalar computation against central
// differences over every coordinate of every parameter in store. The
// relative error of a coordinate is |a - n| / max(|a|, |n|, kGradCheckFloor).
// The floor keeps gradients too small for differences to resolve (roundoff
// in the loss is ~1e-11 per coordinate) from dominating the maximum.
// build must read all parameters through Graph::Param(store, ...).
GradCheckResult GradCheck(ParameterStore& store, const std::function<Var(Graph&)>& build,
                          double step = 1e-5);

}  // namespace wcnslu::nn

#endif  // WCNSLU_NN_GRADCHECK_H_
