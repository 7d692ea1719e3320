// include/wcnslu/vocab.h

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

#ifndef WCNSLU_VOCAB_H_
#define WCNSLU_VOCAB_H_

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace wcnslu {

inline constexpr std::string_view kEps = "<eps>";
inline constexpr std::string_view kUnk = "<unk>";
inline constexpr std::string_view kEos = "<eos>";

bool IsReservedToken(std::string_view token);

// Token <-> id map for the neural models. Ids 0, 1, 2 are always <eps>,
// <unk>, <eos>; remaining tokens follow in lexicographic order so the
// mapping depends only on the token set.
class Vocab {
 public:
  static constexpr int kEpsId = 0;
  static constexpr int kUnkId = 1;
  static constexpr int kEosId = 2;

  Vocab();

  // Keeps tokens whose count reaches min_count.
  static Vocab Build(const std::map<std::string, long>& counts, long min_count);

  // Unknown tokens map to <unk>.
  int Id(std::string_view token) const;
  const std::string& Token(int id) const { return tokens_.at(id); }
  bool Contains(std::string_view token) const;
  size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  nlohmann::json ToJson() const;
  static Vocab FromJson(const nlohmann::json& j);

 private:
  void Insert(const std::string& token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

// Fixed label inventory (tags, acts) with position lookup.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<std::string> labels);

  int Id(std::string_view label) const;  // -1 when absent
  const std::string& Label(int id) const { return labels_.at(id); }
  size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace wcnslu

#endif  // WCNSLU_VOCAB_H_
