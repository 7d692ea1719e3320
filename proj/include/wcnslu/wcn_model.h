// include/wcnslu/wcn_model.h

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

#ifndef WCNSLU_WCN_MODEL_H_
#define WCNSLU_WCN_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcnslu/align.h"
#include "wcnslu/corpus.h"
#include "wcnslu/nn/graph.h"
#include "wcnslu/nn/params.h"
#include "wcnslu/nn/trainer.h"
#include "wcnslu/vocab.h"

namespace wcnslu {

enum class CorrectionHead { kPointer, kWordGen, kNone };
std::string CorrectionHeadName(CorrectionHead head);
CorrectionHead ParseCorrectionHead(const std::string& name);

struct WcnModelConfig {
  size_t nbest = 10;
  size_t embedding = 16;
  size_t hidden = 32;  // per direction
  size_t attention_heads = 4;  // 0 skips the attention layer
  size_t pointer_hidden = 64;
  CorrectionHead head = CorrectionHead::kPointer;
  double correction_weight = 1.0;
  double tag_weight = 1.0;
  double act_weight = 1.0;
  int epochs = 10;
  size_t batch_size = 8;
  double learning_rate = 2e-3;
  long min_count = 1;

  // Width of the per-column state: 2 * hidden + nbest * embedding.
  size_t state_size() const { return 2 * hidden + nbest * embedding; }
  void Validate() const;
  nlohmann::json ToJson() const;
  static WcnModelConfig FromJson(const nlohmann::json& j, const WcnModelConfig& base);
  static WcnModelConfig FromJson(const nlohmann::json& j) {
    return FromJson(j, WcnModelConfig());
  }
};

struct WcnEncoding {
  size_t columns = 0;          // content columns T; row T is the EOS column
  nn::Var items;               // [(T+1)*N, E] bin entry embeddings, column-major
  nn::Var states;              // [T+1, D] after attention
  std::vector<nn::Var> attention;  // per head [T+1, T+1]
};

struct WcnTargets {
  std::vector<int> bin_index;
  std::vector<int> word;  // vocabulary ids
  std::vector<int> tag;
  int act = -1;
};

struct WcnPrediction {
  Tokens corrected;
  Tags tags;  // one per corrected token
  std::string act;
  std::vector<int> indices;  // selected row per column (pointer head)
  Tags column_tags;          // one per network column
  ConfusionNetwork network;
};

// Joint correction and understanding over a confusion network. Every column
// becomes a bin of N entry embeddings; a Bi-LSTM reads the bins plus a final
// EOS bin, each state is joined with its bin embedding, and multihead
// self-attention (with a residual path) mixes the columns. Heads: pointer
// over bin entries, word generation, IOB tag per column, act from the EOS
// column.
class WcnModel {
 public:
  WcnModel() = default;

  static WcnModel Create(const Corpus& train, const WcnModelConfig& config, uint64_t seed);
  // Keeps the epoch with the lowest dev FER.
  static WcnModel Train(const Corpus& train, const Corpus& dev, const WcnModelConfig& config,
                        uint64_t seed, nn::TrainHistory* history = nullptr);

  // Rows beyond N are dropped; fewer rows are padded by repeating row 0.
  WcnEncoding Encode(nn::Graph& g, const ConfusionNetwork& cn) const;
  nn::Var PointerLogits(nn::Graph& g, const WcnEncoding& enc) const;  // [T, N]
  nn::Var WordGenLogits(nn::Graph& g, const WcnEncoding& enc) const;  // [T, |V|]
  nn::Var TagLogits(nn::Graph& g, const WcnEncoding& enc) const;      // [T, K]
  nn::Var IntentLogits(nn::Graph& g, const WcnEncoding& enc) const;   // [1, A]
  nn::Var JointLoss(nn::Graph& g, const WcnEncoding& enc, const WcnTargets& targets) const;

  // Network and targets for one training utterance.
  std::pair<ConfusionNetwork, WcnTargets> PrepareExample(const Utterance& utt) const;
  WcnPrediction Infer(const std::vector<Tokens>& nbest) const;

  void Save(const std::filesystem::path& path) const;
  static WcnModel Load(const std::filesystem::path& path);

  const WcnModelConfig& config() const { return config_; }
  const Vocab& vocab() const { return vocab_; }
  const LabelSet& tag_set() const { return tags_; }
  const LabelSet& act_set() const { return acts_; }
  nn::ParameterStore& params() const { return params_; }

 private:
  WcnModelConfig config_;
  Vocab vocab_;
  LabelSet tags_;
  LabelSet acts_;
  mutable nn::ParameterStore params_;
};

}  // namespace wcnslu

#endif  // WCNSLU_WCN_MODEL_H_
