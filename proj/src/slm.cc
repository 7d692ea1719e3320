// src/slm.cc

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

#include "wcnslu/slm.h"

#include <cmath>
#include <fstream>

#include "wcnslu/error.h"
#include "wcnslu/vocab.h"

namespace wcnslu {

using nlohmann::json;

std::string NGramModel::Key(const Tokens& context, size_t from) {
  std::string key;
  for (size_t i = from; i < context.size(); ++i) {
    if (i > from) key.push_back(' ');
    key += context[i];
  }
  return key;
}

NGramModel NGramModel::Train(const std::vector<Tokens>& sentences, const Options& options) {
  if (options.order < 1) throw DataError("n-gram order must be >= 1");
  if (!(options.discount > 0.0 && options.discount < 1.0)) {
    throw DataError("discount must lie strictly between 0 and 1");
  }
  if (sentences.empty()) throw DataError("cannot train an n-gram model on no sentences");

  NGramModel m;
  m.options_ = options;
  std::map<std::string, long> freq;
  for (const auto& s : sentences) {
    for (const auto& w : s) ++freq[w];
  }
  m.vocabulary_.insert(std::string(kUnk));
  m.vocabulary_.insert(std::string(kEos));
  for (const auto& [w, c] : freq) {
    if (c >= options.min_count) m.vocabulary_.insert(w);
  }

  const size_t history = static_cast<size_t>(options.order - 1);
  for (const auto& s : sentences) {
    Tokens padded(history, std::string(kSentenceStart));
    for (const auto& w : s) padded.push_back(m.Map(w));
    padded.push_back(std::string(kEos));
    for (size_t i = history; i < padded.size(); ++i) {
      Tokens ctx(padded.begin() + (i - history), padded.begin() + i);
      for (size_t k = 0; k <= history; ++k) {
        ContextStats& stats = m.contexts_[Key(ctx, history - k)];
        ++stats.next[padded[i]];
        ++stats.total;
      }
    }
  }
  return m;
}

std::string NGramModel::Map(const std::string& token) const {
  if (token == kSentenceStart || vocabulary_.count(token)) return token;
  return std::string(kUnk);
}

long NGramModel::Count(const Tokens& context, const std::string& token) const {
  Tokens mapped;
  for (const auto& t : context) mapped.push_back(Map(t));
  auto it = contexts_.find(Key(mapped, 0));
  if (it == contexts_.end()) return 0;
  auto jt = it->second.next.find(Map(token));
  return jt == it->second.next.end() ? 0 : jt->second;
}

double NGramModel::ProbMapped(const Tokens& context, size_t from,
                              const std::string& token) const {
  const double uniform = 1.0 / static_cast<double>(vocabulary_.size());
  // Walk from the shortest history up, interpolating at every level the
  // training data has seen.
  double p = uniform;
  for (size_t start = context.size() + 1; start-- > from;) {
    auto it = contexts_.find(Key(context, start));
    if (it == contexts_.end()) continue;
    const ContextStats& stats = it->second;
    const double total = static_cast<double>(stats.total);
    auto jt = stats.next.find(token);
    double c = jt == stats.next.end() ? 0.0 : static_cast<double>(jt->second);
    double lambda = options_.discount * static_cast<double>(stats.next.size()) / total;
    p = std::max(c - options_.discount, 0.0) / total + lambda * p;
  }
  return p;
}

double NGramModel::Prob(const Tokens& context, const std::string& token) const {
  Tokens mapped;
  size_t keep = static_cast<size_t>(options_.order - 1);
  size_t first = context.size() > keep ? context.size() - keep : 0;
  for (size_t i = first; i < context.size(); ++i) mapped.push_back(Map(context[i]));
  return ProbMapped(mapped, 0, Map(token));
}

double NGramModel::LogProb(const Tokens& context, const std::string& token) const {
  return std::log(Prob(context, token));
}

double NGramModel::Perplexity(const Tokens& sentence) const {
  const size_t history = static_cast<size_t>(options_.order - 1);
  Tokens padded(history, std::string(kSentenceStart));
  for (const auto& w : sentence) padded.push_back(Map(w));
  padded.push_back(std::string(kEos));
  double log_sum = 0.0;
  for (size_t i = history; i < padded.size(); ++i) {
    Tokens ctx(padded.begin() + (i - history), padded.begin() + i);
    log_sum += std::log(ProbMapped(ctx, 0, padded[i]));
  }
  double len = static_cast<double>(padded.size() - history);
  return std::exp(-log_sum / len);
}

json NGramModel::ToJson() const {
  json counts = json::object();
  for (const auto& [key, stats] : contexts_) counts[key] = stats.next;
  return {{"order", options_.order},
          {"discount", options_.discount},
          {"min_count", options_.min_count},
          {"vocabulary", vocabulary_},
          {"counts", counts}};
}

NGramModel NGramModel::FromJson(const json& j) {
  NGramModel m;
  try {
    m.options_.order = j.at("order").get<int>();
    m.options_.discount = j.at("discount").get<double>();
    m.options_.min_count = j.value("min_count", 2L);
    m.vocabulary_ = j.at("vocabulary").get<std::set<std::string>>();
    for (const auto& [key, next] : j.at("counts").items()) {
      ContextStats stats;
      stats.next = next.get<std::map<std::string, long>>();
      for (const auto& [w, c] : stats.next) stats.total += c;
      m.contexts_.emplace(key, std::move(stats));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed n-gram model: ") + e.what());
  }
  if (m.options_.order < 1) throw DataError("n-gram order must be >= 1");
  return m;
}

void NGramModel::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << ToJson().dump(1) << '\n';
}

NGramModel NGramModel::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return FromJson(j);
}

RerankResult RerankByPerplexity(const NGramModel& model, const std::vector<Tokens>& nbest) {
  if (nbest.empty()) throw DataError("cannot rerank an empty n-best");
  RerankResult r;
  for (const auto& h : nbest) r.perplexities.push_back(model.Perplexity(h));
  for (size_t i = 1; i < nbest.size(); ++i) {
    if (r.perplexities[i] < r.perplexities[r.index]) r.index = static_cast<int>(i);
  }
  return r;
}

}  // namespace wcnslu
