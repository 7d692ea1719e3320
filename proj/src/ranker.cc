// src/ranker.cc

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

#include "wcnslu/ranker.h"

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

namespace {

// Empty hypotheses are read as a single <eps>.
const Tokens& NonEmpty(const Tokens& tokens) {
  static const Tokens kEmpty{std::string(kEps)};
  return tokens.empty() ? kEmpty : tokens;
}

std::string ConvName(size_t width) { return "conv" + std::to_string(width); }

}  // namespace

void RankerConfig::Validate() const {
  if (widths.empty()) throw DataError("ranker needs at least one filter width");
  for (size_t w : widths) {
    if (w < 1) throw DataError("ranker filter widths must be >= 1");
  }
  if (nbest < 1 || filters == 0 || hidden == 0 || embedding == 0 || batch_size == 0) {
    throw DataError("ranker sizes must be positive");
  }
}

json RankerConfig::ToJson() const {
  return {{"widths", widths},       {"filters", filters},
          {"hidden", hidden},       {"embedding", embedding},
          {"nbest", nbest},         {"epochs", epochs},
          {"batch_size", batch_size}, {"learning_rate", learning_rate},
          {"min_count", min_count}};
}

RankerConfig RankerConfig::FromJson(const json& j, const RankerConfig& base) {
  RankerConfig c = base;
  if (j.contains("widths")) c.widths = j.at("widths").get<std::vector<size_t>>();
  c.filters = j.value("filters", c.filters);
  c.hidden = j.value("hidden", c.hidden);
  c.embedding = j.value("embedding", c.embedding);
  c.nbest = j.value("nbest", c.nbest);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.min_count = j.value("min_count", c.min_count);
  c.Validate();
  return c;
}

Ranker Ranker::Create(const Corpus& train, const RankerConfig& config, uint64_t seed) {
  config.Validate();
  if (train.empty()) throw DataError("ranker training corpus is empty");
  Ranker r;
  r.config_ = config;
  std::map<std::string, long> counts;
  for (const auto& utt : train.utterances()) {
    for (const auto& hyp : utt.nbest) {
      for (const auto& tok : hyp.tokens) ++counts[tok];
    }
  }
  r.vocab_ = Vocab::Build(counts, config.min_count);

  Rng rng(seed, "init");
  const size_t E = config.embedding;
  r.params_.Add("emb", nn::UniformTensor({r.vocab_.size(), E}, 0.1, rng));
  for (size_t w : config.widths) nn::AddLinear(r.params_, ConvName(w), w * E, config.filters, rng);
  nn::AddLstm(r.params_, "rnn", config.widths.size() * config.filters, config.hidden, rng);
  nn::AddLinear(r.params_, "score.h", 2 * config.hidden, config.hidden, rng);
  // No output bias: it would shift every logit alike.
  r.params_.Add("score.v.w", nn::FanInTensor(1, config.hidden, rng));
  return r;
}

Var Ranker::EncodeHypothesis(Graph& g, const Tokens& tokens) const {
  if (tokens.empty()) throw DataError("cannot encode an empty hypothesis");
  std::vector<int> ids;
  for (const auto& tok : tokens) ids.push_back(vocab_.Id(tok));
  Var x = nn::Gather(g, g.Param(params_, "emb"), ids);
  std::vector<Var> channels;
  for (size_t w : config_.widths) {
    channels.push_back(nn::ApplyLinear(g, params_, ConvName(w), nn::Unfold(g, x, w)));
  }
  Var features = nn::Relu(g, nn::ConcatCols(g, channels));
  return nn::RunLstm(g, nn::BindLstm(g, params_, "rnn"), features, false);
}

Var Ranker::Logits(Graph& g, const std::vector<Tokens>& nbest) const {
  if (nbest.empty()) throw DataError("cannot rank an empty n-best list");
  const size_t N = config_.nbest;
  const size_t used = std::min(N, nbest.size());
  std::vector<Var> last;
  for (size_t i = 0; i < N; ++i) {
    const Tokens& hyp = NonEmpty(nbest[std::min(i, used - 1)]);
    if (i >= used) {
      last.push_back(last.back());  // padding repeats the final hypothesis
      continue;
    }
    Var states = EncodeHypothesis(g, hyp);
    last.push_back(nn::SliceRows(g, states, hyp.size() - 1, 1));
  }
  Var stacked = nn::ConcatRows(g, last);  // [N, H]
  Var avg = nn::RepeatRows(g, nn::MeanRows(g, stacked), N);
  // Linear in [state; mean] the mean term would cancel in the softmax; the
  // tanh layer lets each hypothesis be scored against the consensus.
  Var joined = nn::ConcatCols(g, {stacked, avg});
  Var hidden = nn::Tanh(g, nn::ApplyLinear(g, params_, "score.h", joined));
  Var scores = nn::ApplyLinear(g, params_, "score.v", hidden);  // [N, 1]
  return nn::Reshape(g, nn::SliceRows(g, scores, 0, used), {1, used});
}

RankResult Ranker::Rank(const std::vector<Tokens>& nbest) const {
  Graph g;
  Var logits = Logits(g, nbest);
  RankResult r;
  r.probabilities = nn::Softmax(g.value(logits).values());
  auto best = std::max_element(r.probabilities.begin(), r.probabilities.end());
  r.index = static_cast<int>(best - r.probabilities.begin());
  return r;
}

Ranker Ranker::Train(const Corpus& train, const Corpus& dev, const RankerConfig& config,
                     uint64_t seed, nn::TrainHistory* history) {
  Ranker model = Create(train, config, seed);
  auto truncated = [&](const Utterance& utt) {
    std::vector<Tokens> nbest = utt.NBestTokens();
    if (nbest.size() > config.nbest) nbest.resize(config.nbest);
    return nbest;
  };

  std::vector<std::vector<Tokens>> lists;
  std::vector<int> targets;
  for (const auto& utt : train.utterances()) {
    if (utt.nbest.empty()) continue;
    lists.push_back(truncated(utt));
    targets.push_back(OracleIndex(lists.back(), utt.transcript));
  }
  if (lists.empty()) throw DataError("ranker training corpus has no n-best lists");

  auto loss = [&](Graph& g, size_t i) {
    return nn::SoftmaxCrossEntropy(g, model.Logits(g, lists[i]), {targets[i]});
  };
  std::function<double()> dev_score;
  if (!dev.empty()) {
    dev_score = [&]() {
      size_t hits = 0, total = 0;
      for (const auto& utt : dev.utterances()) {
        if (utt.nbest.empty()) continue;
        auto nbest = truncated(utt);
        hits += model.Rank(nbest).index == OracleIndex(nbest, utt.transcript);
        ++total;
      }
      return total == 0 ? 0.0 : 1.0 - static_cast<double>(hits) / total;
    };
  }

  nn::TrainOptions options;
  options.epochs = config.epochs;
  options.batch_size = config.batch_size;
  options.adam.learning_rate = config.learning_rate;
  options.seed = seed;
  options.log_name = "ranker";
  nn::TrainHistory h = nn::TrainLoop(model.params_, lists.size(), loss, dev_score, options);
  if (history) *history = std::move(h);
  return model;
}

void Ranker::Save(const std::filesystem::path& path) const {
  nn::SaveCheckpoint(path, params_,
                     {{"model", "ranker"}, {"config", config_.ToJson()}, {"vocab", vocab_.ToJson()}});
}

Ranker Ranker::Load(const std::filesystem::path& path) {
  nn::Checkpoint ckpt = nn::LoadCheckpoint(path);
  if (ckpt.meta.value("model", "") != "ranker") {
    throw DataError(path.string() + ": not a ranker checkpoint");
  }
  Ranker r;
  r.config_ = RankerConfig::FromJson(ckpt.meta.at("config"));
  r.vocab_ = Vocab::FromJson(ckpt.meta.at("vocab"));
  r.params_ = std::move(ckpt.store);
  return r;
}

}  // namespace wcnslu
