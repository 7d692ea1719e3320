// include/wcnslu/ranker.h

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

#ifndef WCNSLU_RANKER_H_
#define WCNSLU_RANKER_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "json.hpp"
#include "wcnslu/corpus.h"
#include "wcnslu/nn/graph.h"
#include "wcnslu/nn/params.h"
#include "wcnslu/nn/trainer.h"
#include "wcnslu/vocab.h"

namespace wcnslu {

struct RankerConfig {
  std::vector<size_t> widths = {1, 2, 3};
  size_t filters = 16;  // per width
  size_t hidden = 48;
  size_t embedding = 32;
  size_t nbest = 10;
  int epochs = 8;
  size_t batch_size = 8;
  double learning_rate = 2e-3;
  long min_count = 1;

  void Validate() const;
  nlohmann::json ToJson() const;
  static RankerConfig FromJson(const nlohmann::json& j, const RankerConfig& base);
  static RankerConfig FromJson(const nlohmann::json& j) { return FromJson(j, RankerConfig()); }
};

struct RankResult {
  std::vector<double> probabilities;  // one per original hypothesis
  int index = 0;
};

// Each hypothesis goes through embeddings, same-length convolutions and an
// LSTM with weights shared across the list. Its last state, joined with the
// mean of all last states, is scored by one shared tanh layer and projection.
class Ranker {
 public:
  Ranker() = default;

  static Ranker Create(const Corpus& train, const RankerConfig& config, uint64_t seed);
  // Cross-entropy on the oracle index; keeps the epoch with the best dev
  // oracle-selection accuracy.
  static Ranker Train(const Corpus& train, const Corpus& dev, const RankerConfig& config,
                      uint64_t seed, nn::TrainHistory* history = nullptr);

  // All hidden states [T, hidden] of one hypothesis.
  nn::Var EncodeHypothesis(nn::Graph& g, const Tokens& tokens) const;
  // Logits over the first min(N, size) hypotheses. The list is padded to N
  // by repeating its last entry; padded positions are not returned.
  nn::Var Logits(nn::Graph& g, const std::vector<Tokens>& nbest) const;
  RankResult Rank(const std::vector<Tokens>& nbest) const;

  void Save(const std::filesystem::path& path) const;
  static Ranker Load(const std::filesystem::path& path);

  const RankerConfig& config() const { return config_; }
  const Vocab& vocab() const { return vocab_; }
  nn::ParameterStore& params() const { return params_; }

 private:
  RankerConfig config_;
  Vocab vocab_;
  mutable nn::ParameterStore params_;
};

}  // namespace wcnslu

#endif  // WCNSLU_RANKER_H_
