// src/nn/trainer.cc

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

#include "wcnslu/nn/trainer.h"

#include <chrono>
#include <cstdio>
#include <numeric>

#include "wcnslu/error.h"
#include "wcnslu/random.h"

namespace wcnslu::nn {

nlohmann::json TrainHistory::ToJson() const {
  nlohmann::json epochs_json = nlohmann::json::array();
  for (const auto& e : epochs) {
    epochs_json.push_back(
        {{"epoch", e.epoch}, {"train_loss", e.train_loss}, {"dev_score", e.dev_score}});
  }
  return {{"epochs", epochs_json}, {"best_epoch", best_epoch}, {"best_score", best_score}};
}

TrainHistory TrainLoop(ParameterStore& store, size_t example_count,
                       const std::function<Var(Graph&, size_t)>& example_loss,
                       const std::function<double()>& dev_score, const TrainOptions& options) {
  if (example_count == 0) throw DataError("no training examples");
  const auto start = std::chrono::steady_clock::now();
  Rng rng(options.seed, "shuffle");
  std::vector<size_t> order(example_count);
  std::iota(order.begin(), order.end(), size_t{0});

  TrainHistory history;
  ParameterStore best = store;
  bool have_best = false;
  const size_t batch = std::max<size_t>(1, options.batch_size);
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    rng.Shuffle(order);
    double loss_sum = 0.0;
    for (size_t begin = 0; begin < order.size(); begin += batch) {
      const size_t end = std::min(order.size(), begin + batch);
      store.ZeroGrad();
      for (size_t k = begin; k < end; ++k) {
        Graph g;
        Var loss = example_loss(g, order[k]);
        loss_sum += g.scalar(loss);
        g.Backward(loss);
      }
      store.ScaleGrad(1.0 / static_cast<double>(end - begin));
      if (options.clip_norm > 0.0) {
        double norm = store.GradNorm();
        if (norm > options.clip_norm) store.ScaleGrad(options.clip_norm / norm);
      }
      store.AdamStep(options.adam);
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(example_count);
    rec.dev_score = dev_score ? dev_score() : -static_cast<double>(epoch);
    history.epochs.push_back(rec);
    if (!have_best || rec.dev_score < history.best_score) {
      have_best = true;
      history.best_score = rec.dev_score;
      history.best_epoch = epoch;
      best.CopyValuesFrom(store);
    }
    if (!options.log_name.empty()) {
      std::fprintf(stderr, "[%s] epoch %d loss %.5f dev %.5f\n", options.log_name.c_str(), epoch,
                   rec.train_loss, rec.dev_score);
    }
  }
  store.CopyValuesFrom(best);
  store.ZeroGrad();
  history.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return history;
}

}  // namespace wcnslu::nn
