// src/dstc2.cc

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

#include "wcnslu/dstc2.h"

#include <fstream>

#include "wcnslu/error.h"

namespace wcnslu {

using nlohmann::json;

namespace {

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

// First run of value tokens in transcript that overlaps no taken position.
int FindFreeRun(const Tokens& transcript, const Tokens& value, const std::vector<bool>& taken) {
  if (value.empty() || value.size() > transcript.size()) return -1;
  for (size_t s = 0; s + value.size() <= transcript.size(); ++s) {
    bool ok = true;
    for (size_t k = 0; k < value.size() && ok; ++k) {
      ok = !taken[s + k] && transcript[s + k] == value[k];
    }
    if (ok) return static_cast<int>(s);
  }
  return -1;
}

}  // namespace

Utterance ConvertDstc2Turn(const json& log_turn, const json& label_turn,
                           const std::string& session_id, Dstc2Stats* stats) {
  Utterance utt;
  utt.id = session_id + ":" + std::to_string(label_turn.value("turn-index", 0));

  if (log_turn.contains("output")) {
    Tokens prompt = Tokenize(log_turn["output"].value("transcript", ""));
    if (!prompt.empty()) utt.context.push_back({Speaker::kSystem, std::move(prompt)});
  }
  const json& hyps = log_turn.at("input").at("live").at("asr-hyps");
  for (const auto& h : hyps) {
    Hypothesis hyp;
    hyp.tokens = Tokenize(h.value("asr-hyp", ""));
    if (h.contains("score") && h["score"].is_number()) hyp.score = h["score"].get<double>();
    utt.nbest.push_back(std::move(hyp));
  }
  utt.transcript = Tokenize(label_turn.value("transcription", ""));

  const json& acts = label_turn.at("semantics").at("json");
  if (!acts.empty()) {
    const json& first = acts[0];
    std::set<std::string> requested;
    for (const auto& slot : first.value("slots", json::array())) {
      if (slot.size() == 2 && slot[0] == "slot") requested.insert(slot[1].get<std::string>());
    }
    utt.dialogue_act = CombineActLabel(first.at("act").get<std::string>(), requested);
  }

  std::vector<bool> taken(utt.transcript.size(), false);
  for (const auto& act : acts) {
    for (const auto& slot : act.value("slots", json::array())) {
      if (slot.size() != 2 || !slot[0].is_string() || !slot[1].is_string()) continue;
      std::string type = slot[0].get<std::string>();
      std::string value = slot[1].get<std::string>();
      if (type == "slot" || type == "this" || value == "dontcare") continue;
      Tokens value_tokens = Tokenize(value);
      int start = FindFreeRun(utt.transcript, value_tokens, taken);
      if (start < 0) {
        if (stats) ++stats->unplaced_values;
        continue;
      }
      int end = start + static_cast<int>(value_tokens.size());
      for (int k = start; k < end; ++k) taken[k] = true;
      utt.slots.push_back({type, start, end});
    }
  }
  std::sort(utt.slots.begin(), utt.slots.end(),
            [](const SlotSpan& a, const SlotSpan& b) { return a.start < b.start; });
  if (stats) ++stats->turns;
  return utt;
}

std::vector<Utterance> ReadDstc2Dialogue(const std::filesystem::path& dir, Dstc2Stats* stats) {
  json log = ReadJsonFile(dir / "log.json");
  json label = ReadJsonFile(dir / "label.json");
  const json& log_turns = log.at("turns");
  const json& label_turns = label.at("turns");
  if (log_turns.size() != label_turns.size()) {
    throw DataError(dir.string() + ": log and label turn counts differ");
  }
  std::string session = label.value("session-id", dir.filename().string());
  std::vector<Utterance> out;
  try {
    for (size_t i = 0; i < log_turns.size(); ++i) {
      out.push_back(ConvertDstc2Turn(log_turns[i], label_turns[i], session, stats));
    }
  } catch (const json::exception& e) {
    throw DataError(dir.string() + ": " + e.what());
  }
  if (stats) ++stats->dialogues;
  return out;
}

Corpus ReadDstc2(const std::filesystem::path& root, const std::filesystem::path& flist,
                 Dstc2Stats* stats) {
  std::ifstream in(flist);
  if (!in) throw DataError("cannot open " + flist.string());
  std::vector<Utterance> all;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.empty()) continue;
    for (auto& utt : ReadDstc2Dialogue(root / line, stats)) all.push_back(std::move(utt));
  }
  return Corpus(std::move(all));
}

}  // namespace wcnslu
