// include/wcnslu/tagger.h

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

#ifndef WCNSLU_TAGGER_H_
#define WCNSLU_TAGGER_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcnslu/corpus.h"
#include "wcnslu/crf.h"
#include "wcnslu/nn/graph.h"
#include "wcnslu/nn/params.h"
#include "wcnslu/nn/trainer.h"
#include "wcnslu/vocab.h"

namespace wcnslu {

struct TaggerConfig {
  size_t embedding = 64;
  size_t hidden = 64;  // per direction
  int epochs = 10;
  size_t batch_size = 8;
  double learning_rate = 2e-3;
  long min_count = 1;
  // Probability of replacing a training token by <unk>, so the model has
  // seen <unk> before it meets recognizer noise.
  double word_dropout = 0.1;

  nlohmann::json ToJson() const;
  // Keys absent from j keep the values of base.
  static TaggerConfig FromJson(const nlohmann::json& j, const TaggerConfig& base);
  static TaggerConfig FromJson(const nlohmann::json& j) { return FromJson(j, TaggerConfig()); }
};

struct TagResult {
  Tags tags;
  std::string act;
};

// Bi-LSTM encoder shared by a CRF slot tagger and a dialogue-act head that
// reads the last forward and first backward states.
class Tagger {
 public:
  Tagger() = default;

  // Untrained model with inventories taken from train.
  static Tagger Create(const Corpus& train, const TaggerConfig& config, uint64_t seed);
  // Trains on transcripts and keeps the epoch with the lowest dev FER.
  static Tagger Train(const Corpus& train, const Corpus& dev, const TaggerConfig& config,
                      uint64_t seed, nn::TrainHistory* history = nullptr);

  TagResult Tag(const Tokens& tokens) const;

  // CRF negative log-likelihood plus act cross-entropy for one example.
  nn::Var Loss(nn::Graph& g, const std::vector<int>& ids, const std::vector<int>& tags,
               int act) const;

  void Save(const std::filesystem::path& path) const;
  static Tagger Load(const std::filesystem::path& path);

  const Vocab& vocab() const { return vocab_; }
  const LabelSet& tag_set() const { return tags_; }
  const LabelSet& act_set() const { return acts_; }
  const TaggerConfig& config() const { return config_; }
  nn::ParameterStore& params() const { return params_; }

  std::vector<int> Encode(const Tokens& tokens) const;
  CrfParams CurrentCrf() const;

 private:
  struct Outputs {
    nn::Var emissions;  // [T, K]
    nn::Var act_logits;  // [1, A]
  };
  Outputs Forward(nn::Graph& g, const std::vector<int>& ids) const;
  nlohmann::json Meta() const;

  TaggerConfig config_;
  Vocab vocab_;
  LabelSet tags_;
  LabelSet acts_;
  // Inference builds graphs over the store without writing to it.
  mutable nn::ParameterStore params_;
};

}  // namespace wcnslu

#endif  // WCNSLU_TAGGER_H_
