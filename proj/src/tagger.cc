// src/tagger.cc

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

#include "wcnslu/tagger.h"

#include <algorithm>

#include "wcnslu/error.h"
#include "wcnslu/metrics.h"
#include "wcnslu/nn/checkpoint.h"
#include "wcnslu/nn/layers.h"
#include "wcnslu/nn/ops.h"
#include "wcnslu/random.h"

namespace wcnslu {

using nlohmann::json;
using nn::Graph;
using nn::Var;

json TaggerConfig::ToJson() const {
  return {{"embedding", embedding},         {"hidden", hidden},
          {"epochs", epochs},               {"batch_size", batch_size},
          {"learning_rate", learning_rate}, {"min_count", min_count},
          {"word_dropout", word_dropout}};
}

TaggerConfig TaggerConfig::FromJson(const json& j, const TaggerConfig& base) {
  TaggerConfig c = base;
  c.embedding = j.value("embedding", c.embedding);
  c.hidden = j.value("hidden", c.hidden);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.min_count = j.value("min_count", c.min_count);
  c.word_dropout = j.value("word_dropout", c.word_dropout);
  if (c.embedding == 0 || c.hidden == 0 || c.batch_size == 0) {
    throw DataError("tagger sizes must be positive");
  }
  return c;
}

Tagger Tagger::Create(const Corpus& train, const TaggerConfig& config, uint64_t seed) {
  if (train.empty()) throw DataError("tagger training corpus is empty");
  Tagger t;
  t.config_ = config;
  t.vocab_ = Vocab::Build(train.TranscriptCounts(), config.min_count);
  t.tags_ = LabelSet(IobInventory(train.slot_inventory()));
  t.acts_ = LabelSet({train.act_inventory().begin(), train.act_inventory().end()});

  Rng rng(seed, "init");
  const size_t E = config.embedding, H = config.hidden, K = t.tags_.size();
  auto& p = t.params_;
  p.Add("emb", nn::UniformTensor({t.vocab_.size(), E}, 0.1, rng));
  nn::AddBiLstm(p, "enc", E, H, rng);
  nn::AddLinear(p, "tag", 2 * H, K, rng);
  nn::AddLinear(p, "act", 2 * H, t.acts_.size(), rng);
  p.Add("crf.trans", nn::Tensor(K, K));
  p.Add("crf.start", nn::Tensor({K}));
  p.Add("crf.stop", nn::Tensor({K}));
  return t;
}

std::vector<int> Tagger::Encode(const Tokens& tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& tok : tokens) ids.push_back(vocab_.Id(tok));
  return ids;
}

Tagger::Outputs Tagger::Forward(Graph& g, const std::vector<int>& ids) const {
  if (ids.empty()) throw DataError("cannot tag an empty token sequence");
  const size_t H = config_.hidden, T = ids.size();
  Var x = nn::Gather(g, g.Param(params_, "emb"), ids);
  Var states = nn::BiLstm(g, params_, "enc", x);
  Outputs out;
  out.emissions = nn::ApplyLinear(g, params_, "tag", states);
  Var last_fwd = nn::SliceCols(g, nn::SliceRows(g, states, T - 1, 1), 0, H);
  Var first_bwd = nn::SliceCols(g, nn::SliceRows(g, states, 0, 1), H, H);
  out.act_logits = nn::ApplyLinear(g, params_, "act", nn::ConcatCols(g, {last_fwd, first_bwd}));
  return out;
}

Var Tagger::Loss(Graph& g, const std::vector<int>& ids, const std::vector<int>& tags,
                 int act) const {
  Outputs out = Forward(g, ids);
  Var crf = CrfNegLogLikelihood(g, out.emissions, g.Param(params_, "crf.trans"),
                                g.Param(params_, "crf.start"), g.Param(params_, "crf.stop"),
                                tags);
  if (act < 0) return crf;
  return nn::Add(g, crf, nn::SoftmaxCrossEntropy(g, out.act_logits, {act}));
}

CrfParams Tagger::CurrentCrf() const {
  CrfParams crf;
  crf.transitions = params_.Get("crf.trans").value;
  auto s = params_.Get("crf.start").value.values();
  auto e = params_.Get("crf.stop").value.values();
  crf.start.assign(s.begin(), s.end());
  crf.stop.assign(e.begin(), e.end());
  return crf;
}

TagResult Tagger::Tag(const Tokens& tokens) const {
  if (tokens.empty()) throw DataError("cannot tag an empty token sequence");
  Graph g;
  Outputs out = Forward(g, Encode(tokens));
  ViterbiPath path = CrfViterbi(g.value(out.emissions), CurrentCrf());
  TagResult result;
  for (int k : path.tags) result.tags.push_back(tags_.Label(k));
  result.tags = RepairIob(std::move(result.tags));
  auto logits = g.value(out.act_logits).values();
  auto best = std::max_element(logits.begin(), logits.end());
  result.act = acts_.Label(static_cast<int>(best - logits.begin()));
  return result;
}

Tagger Tagger::Train(const Corpus& train, const Corpus& dev, const TaggerConfig& config,
                     uint64_t seed, nn::TrainHistory* history) {
  Tagger model = Create(train, config, seed);

  struct Example {
    std::vector<int> ids;
    std::vector<int> tags;
    int act;
  };
  std::vector<Example> examples;
  for (const auto& utt : train.utterances()) {
    if (utt.transcript.empty()) continue;
    Example ex;
    ex.ids = model.Encode(utt.transcript);
    for (const auto& tag : ToIob(utt.transcript, utt.slots)) ex.tags.push_back(model.tags_.Id(tag));
    ex.act = model.acts_.Id(utt.dialogue_act);
    examples.push_back(std::move(ex));
  }
  if (examples.empty()) throw DataError("tagger training corpus has no transcripts");

  Rng dropout(seed, "dropout");
  auto loss = [&](Graph& g, size_t i) {
    std::vector<int> ids = examples[i].ids;
    for (int& id : ids) {
      if (dropout.Bernoulli(config.word_dropout)) id = Vocab::kUnkId;
    }
    return model.Loss(g, ids, examples[i].tags, examples[i].act);
  };

  std::function<double()> dev_score;
  if (!dev.empty()) {
    dev_score = [&]() {
      std::vector<Frame> predicted, gold;
      for (const auto& utt : dev.utterances()) {
        if (utt.transcript.empty()) continue;
        TagResult r = model.Tag(utt.transcript);
        predicted.push_back(MakeFrame(r.act, utt.transcript, r.tags));
        gold.push_back(MakeFrame(utt.dialogue_act, utt.transcript,
                                 ToIob(utt.transcript, utt.slots)));
      }
      return predicted.empty() ? 0.0 : FrameErrorRate(predicted, gold);
    };
  }

  nn::TrainOptions options;
  options.epochs = config.epochs;
  options.batch_size = config.batch_size;
  options.adam.learning_rate = config.learning_rate;
  options.seed = seed;
  options.log_name = "tagger";
  nn::TrainHistory h = nn::TrainLoop(model.params_, examples.size(), loss, dev_score, options);
  if (history) *history = std::move(h);
  return model;
}

json Tagger::Meta() const {
  return {{"model", "tagger"},
          {"config", config_.ToJson()},
          {"vocab", vocab_.ToJson()},
          {"tags", tags_.labels()},
          {"acts", acts_.labels()}};
}

void Tagger::Save(const std::filesystem::path& path) const {
  nn::SaveCheckpoint(path, params_, Meta());
}

Tagger Tagger::Load(const std::filesystem::path& path) {
  nn::Checkpoint ckpt = nn::LoadCheckpoint(path);
  if (ckpt.meta.value("model", "") != "tagger") {
    throw DataError(path.string() + ": not a tagger checkpoint");
  }
  Tagger t;
  t.config_ = TaggerConfig::FromJson(ckpt.meta.at("config"));
  t.vocab_ = Vocab::FromJson(ckpt.meta.at("vocab"));
  t.tags_ = LabelSet(ckpt.meta.at("tags").get<std::vector<std::string>>());
  t.acts_ = LabelSet(ckpt.meta.at("acts").get<std::vector<std::string>>());
  t.params_ = std::move(ckpt.store);
  return t;
}

}  // namespace wcnslu
