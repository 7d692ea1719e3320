// src/vocab.cc

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

#include "wcnslu/vocab.h"

#include "wcnslu/error.h"

namespace wcnslu {

bool IsReservedToken(std::string_view token) {
  return token == kEps || token == kUnk || token == kEos;
}

Vocab::Vocab() {
  Insert(std::string(kEps));
  Insert(std::string(kUnk));
  Insert(std::string(kEos));
}

void Vocab::Insert(const std::string& token) {
  if (ids_.count(token)) return;
  ids_.emplace(token, static_cast<int>(tokens_.size()));
  tokens_.push_back(token);
}

Vocab Vocab::Build(const std::map<std::string, long>& counts, long min_count) {
  Vocab v;
  for (const auto& [token, count] : counts) {
    if (count >= min_count && !IsReservedToken(token)) v.Insert(token);
  }
  return v;
}

int Vocab::Id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnkId : it->second;
}

bool Vocab::Contains(std::string_view token) const {
  return ids_.count(std::string(token)) > 0;
}

nlohmann::json Vocab::ToJson() const { return tokens_; }

Vocab Vocab::FromJson(const nlohmann::json& j) {
  auto tokens = j.get<std::vector<std::string>>();
  if (tokens.size() < 3 || tokens[0] != kEps || tokens[1] != kUnk ||
      tokens[2] != kEos) {
    throw DataError("vocabulary must start with <eps>, <unk>, <eos>");
  }
  Vocab v;
  for (size_t i = 3; i < tokens.size(); ++i) v.Insert(tokens[i]);
  return v;
}

LabelSet::LabelSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (!ids_.emplace(labels_[i], static_cast<int>(i)).second) {
      throw DataError("duplicate label '" + labels_[i] + "'");
    }
  }
}

int LabelSet::Id(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  return it == ids_.end() ? -1 : it->second;
}

}  // namespace wcnslu
