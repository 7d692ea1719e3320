// src/wcn_model.cc

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

#include "wcnslu/wcn_model.h"

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

std::string CorrectionHeadName(CorrectionHead head) {
  switch (head) {
    case CorrectionHead::kPointer:
      return "pointer";
    case CorrectionHead::kWordGen:
      return "wordgen";
    case CorrectionHead::kNone:
      return "none";
  }
  return "none";
}

CorrectionHead ParseCorrectionHead(const std::string& name) {
  if (name == "pointer") return CorrectionHead::kPointer;
  if (name == "wordgen") return CorrectionHead::kWordGen;
  if (name == "none") return CorrectionHead::kNone;
  throw DataError("unknown correction head '" + name + "' (pointer, wordgen, none)");
}

void WcnModelConfig::Validate() const {
  if (nbest < 1 || embedding == 0 || hidden == 0 || pointer_hidden == 0 || batch_size == 0) {
    throw DataError("wcn model sizes must be positive");
  }
  if (correction_weight < 0 || tag_weight < 0 || act_weight < 0) {
    throw DataError("wcn head weights must be non-negative");
  }
  double active = tag_weight + act_weight + (head == CorrectionHead::kNone ? 0 : correction_weight);
  if (!(active > 0)) throw DataError("wcn head weights must not all be zero");
  if (attention_heads > 0 && state_size() % attention_heads != 0) {
    throw DataError("state size " + std::to_string(state_size()) + " is not divisible by " +
                    std::to_string(attention_heads) + " attention heads");
  }
}

json WcnModelConfig::ToJson() const {
  return {{"nbest", nbest},
          {"embedding", embedding},
          {"hidden", hidden},
          {"attention_heads", attention_heads},
          {"pointer_hidden", pointer_hidden},
          {"head", CorrectionHeadName(head)},
          {"correction_weight", correction_weight},
          {"tag_weight", tag_weight},
          {"act_weight", act_weight},
          {"epochs", epochs},
          {"batch_size", batch_size},
          {"learning_rate", learning_rate},
          {"min_count", min_count}};
}

WcnModelConfig WcnModelConfig::FromJson(const json& j, const WcnModelConfig& base) {
  WcnModelConfig c = base;
  c.nbest = j.value("nbest", c.nbest);
  c.embedding = j.value("embedding", c.embedding);
  c.hidden = j.value("hidden", c.hidden);
  c.attention_heads = j.value("attention_heads", c.attention_heads);
  c.pointer_hidden = j.value("pointer_hidden", c.pointer_hidden);
  if (j.contains("head")) c.head = ParseCorrectionHead(j.at("head").get<std::string>());
  c.correction_weight = j.value("correction_weight", c.correction_weight);
  c.tag_weight = j.value("tag_weight", c.tag_weight);
  c.act_weight = j.value("act_weight", c.act_weight);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.min_count = j.value("min_count", c.min_count);
  c.Validate();
  return c;
}

WcnModel WcnModel::Create(const Corpus& train, const WcnModelConfig& config, uint64_t seed) {
  config.Validate();
  if (train.empty()) throw DataError("wcn training corpus is empty");
  WcnModel m;
  m.config_ = config;
  m.vocab_ = Vocab::Build(train.vocabulary(), config.min_count);
  m.tags_ = LabelSet(IobInventory(train.slot_inventory()));
  m.acts_ = LabelSet({train.act_inventory().begin(), train.act_inventory().end()});

  Rng rng(seed, "init");
  const size_t E = config.embedding, D = config.state_size();
  auto& p = m.params_;
  p.Add("emb", nn::UniformTensor({m.vocab_.size(), E}, 0.1, rng));
  nn::AddBiLstm(p, "enc", config.nbest * E, config.hidden, rng);
  if (config.attention_heads > 0) nn::AddSelfAttention(p, "attn", D, rng);
  nn::AddLinear(p, "ptr.ws", D, config.pointer_hidden, rng);
  nn::AddLinear(p, "ptr.we", E, config.pointer_hidden, rng);
  nn::AddLinear(p, "ptr.v", config.pointer_hidden, 1, rng);
  nn::AddLinear(p, "gen", D, m.vocab_.size(), rng);
  nn::AddLinear(p, "tag", D, m.tags_.size(), rng);
  nn::AddLinear(p, "intent", D, m.acts_.size(), rng);
  return m;
}

WcnEncoding WcnModel::Encode(Graph& g, const ConfusionNetwork& cn) const {
  if (cn.rows() == 0 || cn.width() == 0) throw DataError("cannot encode an empty network");
  const size_t N = config_.nbest, T = cn.width();
  std::vector<int> ids;
  ids.reserve((T + 1) * N);
  for (size_t t = 0; t < T; ++t) {
    for (size_t r = 0; r < N; ++r) {
      ids.push_back(vocab_.Id(cn.grid[r < cn.rows() ? r : 0][t]));
    }
  }
  for (size_t r = 0; r < N; ++r) ids.push_back(Vocab::kEosId);

  WcnEncoding enc;
  enc.columns = T;
  enc.items = nn::Gather(g, g.Param(params_, "emb"), ids);
  Var bins = nn::Reshape(g, enc.items, {T + 1, N * config_.embedding});
  Var hidden = nn::BiLstm(g, params_, "enc", bins);
  Var states = nn::ConcatCols(g, {hidden, bins});
  if (config_.attention_heads > 0) {
    auto attn = nn::MultiheadSelfAttention(g, params_, "attn", states, config_.attention_heads);
    states = nn::Add(g, states, attn.output);
    enc.attention = std::move(attn.weights);
  }
  enc.states = states;
  return enc;
}

Var WcnModel::PointerLogits(Graph& g, const WcnEncoding& enc) const {
  const size_t N = config_.nbest, T = enc.columns;
  Var query = nn::RepeatEachRow(g, nn::ApplyLinear(g, params_, "ptr.ws", enc.states), N);
  Var keys = nn::ApplyLinear(g, params_, "ptr.we", enc.items);
  Var scores = nn::ApplyLinear(g, params_, "ptr.v", nn::Tanh(g, nn::Add(g, query, keys)));
  return nn::SliceRows(g, nn::Reshape(g, scores, {T + 1, N}), 0, T);
}

Var WcnModel::WordGenLogits(Graph& g, const WcnEncoding& enc) const {
  return nn::ApplyLinear(g, params_, "gen", nn::SliceRows(g, enc.states, 0, enc.columns));
}

Var WcnModel::TagLogits(Graph& g, const WcnEncoding& enc) const {
  return nn::ApplyLinear(g, params_, "tag", nn::SliceRows(g, enc.states, 0, enc.columns));
}

Var WcnModel::IntentLogits(Graph& g, const WcnEncoding& enc) const {
  return nn::ApplyLinear(g, params_, "intent", nn::SliceRows(g, enc.states, enc.columns, 1));
}

Var WcnModel::JointLoss(Graph& g, const WcnEncoding& enc, const WcnTargets& targets) const {
  const double per_column = 1.0 / static_cast<double>(enc.columns);
  std::vector<Var> terms;
  std::vector<double> weights;
  if (config_.correction_weight > 0) {
    if (config_.head == CorrectionHead::kPointer) {
      terms.push_back(nn::SoftmaxCrossEntropy(g, PointerLogits(g, enc), targets.bin_index));
      weights.push_back(config_.correction_weight * per_column);
    } else if (config_.head == CorrectionHead::kWordGen) {
      terms.push_back(nn::SoftmaxCrossEntropy(g, WordGenLogits(g, enc), targets.word));
      weights.push_back(config_.correction_weight * per_column);
    }
  }
  if (config_.tag_weight > 0) {
    terms.push_back(nn::SoftmaxCrossEntropy(g, TagLogits(g, enc), targets.tag));
    weights.push_back(config_.tag_weight * per_column);
  }
  if (config_.act_weight > 0 && targets.act >= 0) {
    terms.push_back(nn::SoftmaxCrossEntropy(g, IntentLogits(g, enc), {targets.act}));
    weights.push_back(config_.act_weight);
  }
  if (terms.empty()) return g.Constant(nn::Tensor::Scalar(0.0));
  return nn::WeightedSum(g, terms, weights);
}

std::pair<ConfusionNetwork, WcnTargets> WcnModel::PrepareExample(const Utterance& utt) const {
  std::vector<Tokens> nbest = utt.NBestTokens();
  if (nbest.empty()) throw DataError(utt.id + ": empty n-best list");
  if (nbest.size() > config_.nbest) nbest.resize(config_.nbest);
  TranscriptAlignment alignment = AlignTranscript(BuildConfusionNetwork(nbest), utt.transcript);
  TrainingTargets t = ProjectTrainingTargets(alignment, ToIob(utt.transcript, utt.slots),
                                             utt.dialogue_act);
  WcnTargets targets;
  targets.bin_index = t.bin_index;
  for (const auto& w : t.correction_word) targets.word.push_back(vocab_.Id(w));
  for (const auto& tag : t.iob_tag) targets.tag.push_back(tags_.Id(tag));
  targets.act = acts_.Id(t.act);
  return {std::move(alignment.network), std::move(targets)};
}

namespace {

int ArgMax(std::span<const double> xs) {
  return static_cast<int>(std::max_element(xs.begin(), xs.end()) - xs.begin());
}

}  // namespace

WcnPrediction WcnModel::Infer(const std::vector<Tokens>& nbest) const {
  if (params_.entries().empty()) throw DataError("wcn model has no parameters");
  if (nbest.empty()) throw DataError("cannot infer from an empty n-best list");
  std::vector<Tokens> used(nbest.begin(),
                           nbest.begin() + std::min(nbest.size(), config_.nbest));
  WcnPrediction out;
  out.network = BuildConfusionNetwork(used);
  const ConfusionNetwork& cn = out.network;
  if (cn.width() == 0) {
    // Every hypothesis is empty: nothing to correct or tag.
    Graph g;
    ConfusionNetwork eps = cn;
    eps.columns.push_back(Column{Column::Kind::kGap, 0, 0, ""});
    for (auto& row : eps.grid) row.push_back(std::string(kEps));
    WcnEncoding enc = Encode(g, eps);
    out.act = acts_.Label(ArgMax(g.value(IntentLogits(g, enc)).values()));
    return out;
  }

  Graph g;
  WcnEncoding enc = Encode(g, cn);
  const size_t T = cn.width();
  std::vector<std::string> column_words(T);
  if (config_.head == CorrectionHead::kPointer) {
    const nn::Tensor& logits = g.value(PointerLogits(g, enc));
    for (size_t t = 0; t < T; ++t) {
      int row = ArgMax(logits.row(t));
      if (static_cast<size_t>(row) >= cn.rows()) row = 0;  // padded copies of row 0
      out.indices.push_back(row);
      column_words[t] = cn.grid[row][t];
    }
  } else if (config_.head == CorrectionHead::kWordGen) {
    const nn::Tensor& logits = g.value(WordGenLogits(g, enc));
    for (size_t t = 0; t < T; ++t) column_words[t] = vocab_.Token(ArgMax(logits.row(t)));
  } else {
    for (size_t t = 0; t < T; ++t) column_words[t] = cn.grid[0][t];
  }

  const nn::Tensor& tag_logits = g.value(TagLogits(g, enc));
  Tags kept;
  for (size_t t = 0; t < T; ++t) {
    out.column_tags.push_back(tags_.Label(ArgMax(tag_logits.row(t))));
    if (column_words[t] == kEps) continue;
    out.corrected.push_back(column_words[t]);
    kept.push_back(out.column_tags.back());
  }
  out.tags = RepairIob(std::move(kept));
  out.act = acts_.Label(ArgMax(g.value(IntentLogits(g, enc)).values()));
  return out;
}

WcnModel WcnModel::Train(const Corpus& train, const Corpus& dev, const WcnModelConfig& config,
                         uint64_t seed, nn::TrainHistory* history) {
  WcnModel model = Create(train, config, seed);
  std::vector<std::pair<ConfusionNetwork, WcnTargets>> examples;
  for (const auto& utt : train.utterances()) {
    if (utt.nbest.empty()) continue;
    examples.push_back(model.PrepareExample(utt));
  }
  if (examples.empty()) throw DataError("wcn training corpus has no n-best lists");

  auto loss = [&](Graph& g, size_t i) {
    return model.JointLoss(g, model.Encode(g, examples[i].first), examples[i].second);
  };
  std::function<double()> dev_score;
  if (!dev.empty()) {
    dev_score = [&]() {
      std::vector<Frame> predicted, gold;
      for (const auto& utt : dev.utterances()) {
        if (utt.nbest.empty()) continue;
        WcnPrediction p = model.Infer(utt.NBestTokens());
        predicted.push_back(MakeFrame(p.act, p.corrected, p.tags));
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
  options.log_name = "wcn";
  nn::TrainHistory h = nn::TrainLoop(model.params_, examples.size(), loss, dev_score, options);
  if (history) *history = std::move(h);
  return model;
}

void WcnModel::Save(const std::filesystem::path& path) const {
  nn::SaveCheckpoint(path, params_,
                     {{"model", "wcn"},
                      {"config", config_.ToJson()},
                      {"vocab", vocab_.ToJson()},
                      {"tags", tags_.labels()},
                      {"acts", acts_.labels()}});
}

WcnModel WcnModel::Load(const std::filesystem::path& path) {
  nn::Checkpoint ckpt = nn::LoadCheckpoint(path);
  if (ckpt.meta.value("model", "") != "wcn") {
    throw DataError(path.string() + ": not a wcn checkpoint");
  }
  WcnModel m;
  m.config_ = WcnModelConfig::FromJson(ckpt.meta.at("config"));
  m.vocab_ = Vocab::FromJson(ckpt.meta.at("vocab"));
  m.tags_ = LabelSet(ckpt.meta.at("tags").get<std::vector<std::string>>());
  m.acts_ = LabelSet(ckpt.meta.at("acts").get<std::vector<std::string>>());
  m.params_ = std::move(ckpt.store);
  return m;
}

}  // namespace wcnslu
