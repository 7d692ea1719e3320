// include/wcnslu/nn/trainer.h

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

#ifndef WCNSLU_NN_TRAINER_H_
#define WCNSLU_NN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcnslu/nn/graph.h"
#include "wcnslu/nn/params.h"

namespace wcnslu::nn {

struct TrainOptions {
  int epochs = 10;
  size_t batch_size = 8;
  AdamConfig adam;
  double clip_norm = 5.0;  // global gradient norm; <= 0 disables clipping
  uint64_t seed = 0;       // drives the per-epoch example order
  std::string log_name;    // progress goes to stderr when non-empty
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double dev_score = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  double best_score = 0.0;
  double seconds = 0.0;

  nlohmann::json ToJson() const;
};

// Mini-batch Adam over example indices in a seeded shuffled order. After
// every epoch dev_score (lower is better) is evaluated; the parameters of
// the best epoch are restored into store on return. Without dev_score the
// final epoch is kept.
TrainHistory TrainLoop(ParameterStore& store, size_t example_count,
                       const std::function<Var(Graph&, size_t)>& example_loss,
                       const std::function<double()>& dev_score, const TrainOptions& options);

}  // namespace wcnslu::nn

#endif  // WCNSLU_NN_TRAINER_H_
