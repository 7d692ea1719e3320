// src/corpus.cc

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

#include "wcnslu/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "wcnslu/error.h"
#include "wcnslu/vocab.h"

namespace wcnslu {

using nlohmann::json;

std::vector<Tokens> Utterance::NBestTokens() const {
  std::vector<Tokens> out;
  out.reserve(nbest.size());
  for (const auto& h : nbest) out.push_back(h.tokens);
  return out;
}

Corpus::Corpus(std::vector<Utterance> utterances)
    : utterances_(std::move(utterances)) {
  for (const auto& utt : utterances_) {
    if (!utt.dialogue_act.empty()) acts_.insert(utt.dialogue_act);
    for (const auto& span : utt.slots) slot_types_.insert(span.type);
    for (const auto& tok : utt.transcript) ++vocabulary_[tok];
    for (const auto& hyp : utt.nbest) {
      for (const auto& tok : hyp.tokens) ++vocabulary_[tok];
    }
  }
}

std::map<std::string, long> Corpus::TranscriptCounts() const {
  std::map<std::string, long> counts;
  for (const auto& utt : utterances_) {
    for (const auto& tok : utt.transcript) ++counts[tok];
  }
  return counts;
}

Tokens Tokenize(std::string_view text) {
  Tokens out;
  std::string cur;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string JoinTokens(const Tokens& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

namespace {

[[noreturn]] void FieldError(size_t line, std::string_view field,
                             std::string_view what) {
  throw DataError("line " + std::to_string(line) + ": field '" +
                  std::string(field) + "': " + std::string(what));
}

const json& Require(const json& obj, const char* field, size_t line) {
  auto it = obj.find(field);
  if (it == obj.end()) FieldError(line, field, "missing");
  return *it;
}

Tokens TextField(const json& value, std::string_view field, size_t line) {
  if (!value.is_string()) FieldError(line, field, "expected a string");
  Tokens toks = Tokenize(value.get<std::string>());
  for (const auto& t : toks) {
    if (IsReservedToken(t)) {
      FieldError(line, field, "reserved token '" + t + "' in raw text");
    }
  }
  return toks;
}

}  // namespace

Utterance ParseUtterance(std::string_view line, size_t line_number) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError("line " + std::to_string(line_number) +
                    ": invalid JSON: " + e.what());
  }
  if (!obj.is_object()) FieldError(line_number, "<record>", "expected an object");

  Utterance utt;
  const json& id = Require(obj, "id", line_number);
  if (!id.is_string() || id.get<std::string>().empty()) {
    FieldError(line_number, "id", "expected a non-empty string");
  }
  utt.id = id.get<std::string>();

  if (auto it = obj.find("context"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) FieldError(line_number, "context", "expected an array");
    for (const auto& turn : *it) {
      if (!turn.is_object()) FieldError(line_number, "context", "expected objects");
      const json& spk = Require(turn, "speaker", line_number);
      ContextTurn ct;
      if (spk == "system") {
        ct.speaker = Speaker::kSystem;
      } else if (spk == "user") {
        ct.speaker = Speaker::kUser;
      } else {
        FieldError(line_number, "context.speaker", "expected system|user");
      }
      ct.tokens = TextField(Require(turn, "text", line_number), "context.text",
                            line_number);
      utt.context.push_back(std::move(ct));
    }
  }

  const json& nbest = Require(obj, "nbest", line_number);
  if (!nbest.is_array()) FieldError(line_number, "nbest", "expected an array");
  for (const auto& h : nbest) {
    if (!h.is_object()) FieldError(line_number, "nbest", "expected objects");
    Hypothesis hyp;
    hyp.tokens = TextField(Require(h, "text", line_number), "nbest.text",
                           line_number);
    if (auto s = h.find("score"); s != h.end() && !s->is_null()) {
      if (!s->is_number()) FieldError(line_number, "nbest.score", "expected a number");
      hyp.score = s->get<double>();
    }
    utt.nbest.push_back(std::move(hyp));
  }

  utt.transcript =
      TextField(Require(obj, "transcript", line_number), "transcript", line_number);

  const json& act = Require(obj, "dialogue_act", line_number);
  if (!act.is_string()) FieldError(line_number, "dialogue_act", "expected a string");
  utt.dialogue_act = act.get<std::string>();

  if (auto it = obj.find("slots"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) FieldError(line_number, "slots", "expected an array");
    for (const auto& s : *it) {
      if (!s.is_object()) FieldError(line_number, "slots", "expected objects");
      const json& type = Require(s, "type", line_number);
      const json& start = Require(s, "start", line_number);
      const json& end = Require(s, "end", line_number);
      if (!type.is_string() || type.get<std::string>().empty()) {
        FieldError(line_number, "slots.type", "expected a non-empty string");
      }
      if (!start.is_number_integer() || !end.is_number_integer()) {
        FieldError(line_number, "slots.start/end", "expected integers");
      }
      utt.slots.push_back({type.get<std::string>(), start.get<int>(), end.get<int>()});
    }
  }
  try {
    ValidateSpans(utt.slots, utt.transcript.size());
  } catch (const DataError& e) {
    FieldError(line_number, "slots", e.what());
  }
  std::sort(utt.slots.begin(), utt.slots.end(),
            [](const SlotSpan& a, const SlotSpan& b) { return a.start < b.start; });
  return utt;
}

Corpus ParseCorpus(std::istream& in) {
  std::vector<Utterance> utts;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Utterance utt = ParseUtterance(line, line_number);
    if (!seen.insert(utt.id).second) {
      throw DataError("line " + std::to_string(line_number) + ": field 'id': duplicate id '" +
                      utt.id + "'");
    }
    utts.push_back(std::move(utt));
  }
  return Corpus(std::move(utts));
}

Corpus ParseCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  try {
    return ParseCorpus(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

json UtteranceToJson(const Utterance& utt) {
  json ctx = json::array();
  for (const auto& turn : utt.context) {
    ctx.push_back({{"speaker", turn.speaker == Speaker::kSystem ? "system" : "user"},
                   {"text", JoinTokens(turn.tokens)}});
  }
  json nbest = json::array();
  for (const auto& h : utt.nbest) {
    json score = h.score ? json(*h.score) : json(nullptr);
    nbest.push_back({{"text", JoinTokens(h.tokens)}, {"score", score}});
  }
  json slots = json::array();
  for (const auto& s : utt.slots) {
    slots.push_back({{"type", s.type}, {"start", s.start}, {"end", s.end}});
  }
  // Field order follows the documented record layout.
  json obj = json::object();
  obj["id"] = utt.id;
  obj["context"] = std::move(ctx);
  obj["nbest"] = std::move(nbest);
  obj["transcript"] = JoinTokens(utt.transcript);
  obj["dialogue_act"] = utt.dialogue_act;
  obj["slots"] = std::move(slots);
  return obj;
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& utt : corpus.utterances()) out << UtteranceToJson(utt).dump() << '\n';
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  WriteCorpus(corpus, out);
}

const std::vector<std::string>& FilteredTranscripts() {
  static const std::vector<std::string> kList = {
      "noise", "unintelligible", "silence", "system", "inaudible", "hello and welcome"};
  return kList;
}

bool ShouldFilter(const Utterance& utt) {
  if (utt.nbest.empty() || utt.dialogue_act.empty()) return true;
  std::string text = JoinTokens(utt.transcript);
  const auto& list = FilteredTranscripts();
  return std::find(list.begin(), list.end(), text) != list.end();
}

Corpus FilterUtterances(const Corpus& corpus) {
  std::vector<Utterance> kept;
  for (const auto& utt : corpus.utterances()) {
    if (!ShouldFilter(utt)) kept.push_back(utt);
  }
  return Corpus(std::move(kept));
}

std::string CombineActLabel(std::string_view act,
                            const std::set<std::string>& slot_types) {
  std::string out(act);
  for (const auto& t : slot_types) {
    out.push_back('_');
    out += t;
  }
  return out;
}

void ValidateSpans(const std::vector<SlotSpan>& slots, size_t length) {
  std::vector<SlotSpan> sorted = slots;
  std::sort(sorted.begin(), sorted.end(),
            [](const SlotSpan& a, const SlotSpan& b) { return a.start < b.start; });
  for (size_t i = 0; i < sorted.size(); ++i) {
    const auto& s = sorted[i];
    if (s.start < 0 || s.start >= s.end || s.end > static_cast<int>(length)) {
      throw DataError("span " + s.type + ":" + std::to_string(s.start) + ".." +
                      std::to_string(s.end) + " out of range for length " +
                      std::to_string(length));
    }
    if (i > 0 && sorted[i - 1].end > s.start) {
      throw DataError("overlapping spans at token " + std::to_string(s.start));
    }
  }
}

Tags ToIob(const Tokens& transcript, const std::vector<SlotSpan>& slots) {
  ValidateSpans(slots, transcript.size());
  Tags tags(transcript.size(), "O");
  for (const auto& s : slots) {
    tags[s.start] = "B-" + s.type;
    for (int i = s.start + 1; i < s.end; ++i) tags[i] = "I-" + s.type;
  }
  return tags;
}

std::vector<SlotSpan> SpansFromIob(const Tags& tags) {
  std::vector<SlotSpan> spans;
  std::optional<SlotSpan> open;
  auto close = [&](int at) {
    if (open) {
      open->end = at;
      spans.push_back(*open);
      open.reset();
    }
  };
  for (size_t i = 0; i < tags.size(); ++i) {
    const std::string& t = tags[i];
    int at = static_cast<int>(i);
    if (t.rfind("B-", 0) == 0) {
      close(at);
      open = SlotSpan{t.substr(2), at, at};
    } else if (t.rfind("I-", 0) == 0) {
      // An I- that does not continue a span of its type opens a new one.
      if (!open || open->type != t.substr(2)) {
        close(at);
        open = SlotSpan{t.substr(2), at, at};
      }
    } else {
      close(at);
    }
  }
  close(static_cast<int>(tags.size()));
  return spans;
}

Tags RepairIob(Tags tags) {
  std::string prev_type;
  for (auto& t : tags) {
    if (t.rfind("I-", 0) == 0) {
      std::string type = t.substr(2);
      if (prev_type != type) t = "B-" + type;
      prev_type = type;
    } else if (t.rfind("B-", 0) == 0) {
      prev_type = t.substr(2);
    } else {
      prev_type.clear();
    }
  }
  return tags;
}

std::vector<std::string> IobInventory(const std::set<std::string>& slot_types) {
  std::vector<std::string> out = {"O"};
  for (const auto& t : slot_types) {
    out.push_back("B-" + t);
    out.push_back("I-" + t);
  }
  return out;
}

}  // namespace wcnslu
