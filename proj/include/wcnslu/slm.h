// include/wcnslu/slm.h

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

#ifndef WCNSLU_SLM_H_
#define WCNSLU_SLM_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcnslu/corpus.h"

namespace wcnslu {

inline constexpr std::string_view kSentenceStart = "<s>";

// Word n-gram model with absolute-discount backoff:
//   P(w|h) = max(c(h,w) - D, 0) / c(h) + D * N1+(h .) / c(h) * P(w|h')
// where h' drops the oldest word of h, and the empty history backs off to
// the uniform distribution over the vocabulary. Histories never observed in
// training fall through to h' unchanged.
class NGramModel {
 public:
  struct Options {
    int order = 3;
    double discount = 0.75;
    // Training words seen fewer times than this become <unk>.
    long min_count = 2;
  };

  static NGramModel Train(const std::vector<Tokens>& sentences, const Options& options);

  int order() const { return options_.order; }
  double discount() const { return options_.discount; }
  // Predictable tokens: training words plus <unk> and <eos>.
  const std::set<std::string>& vocabulary() const { return vocabulary_; }
  // Raw count of token after context; context is oldest-first.
  long Count(const Tokens& context, const std::string& token) const;

  double Prob(const Tokens& context, const std::string& token) const;
  double LogProb(const Tokens& context, const std::string& token) const;
  double Perplexity(const Tokens& sentence) const;

  nlohmann::json ToJson() const;
  static NGramModel FromJson(const nlohmann::json& j);
  void Save(const std::filesystem::path& path) const;
  static NGramModel Load(const std::filesystem::path& path);

 private:
  struct ContextStats {
    std::map<std::string, long> next;
    long total = 0;
  };

  std::string Map(const std::string& token) const;
  double ProbMapped(const Tokens& context, size_t from, const std::string& token) const;
  static std::string Key(const Tokens& context, size_t from);

  Options options_;
  std::set<std::string> vocabulary_;
  std::map<std::string, ContextStats> contexts_;  // key: space-joined history
};

struct RerankResult {
  int index = 0;
  std::vector<double> perplexities;
};

// Lowest perplexity wins; ties keep the recognizer's order.
RerankResult RerankByPerplexity(const NGramModel& model, const std::vector<Tokens>& nbest);

}  // namespace wcnslu

#endif  // WCNSLU_SLM_H_
