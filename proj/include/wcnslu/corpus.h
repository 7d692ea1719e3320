// include/wcnslu/corpus.h

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

#ifndef WCNSLU_CORPUS_H_
#define WCNSLU_CORPUS_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wcnslu {

using Tokens = std::vector<std::string>;

struct SlotSpan {
  std::string type;
  int start = 0;  // inclusive token index
  int end = 0;    // exclusive

  auto operator<=>(const SlotSpan&) const = default;
};

enum class Speaker { kSystem, kUser };

struct ContextTurn {
  Speaker speaker = Speaker::kSystem;
  Tokens tokens;

  bool operator==(const ContextTurn&) const = default;
};

struct Hypothesis {
  Tokens tokens;  // empty tokens mark an explicitly empty hypothesis
  std::optional<double> score;

  bool operator==(const Hypothesis&) const = default;
};

// One user turn: the recognizer's n-best (position 0 is the 1-best), the
// human transcript, and the gold semantic frame.
struct Utterance {
  std::string id;
  std::vector<ContextTurn> context;
  std::vector<Hypothesis> nbest;
  Tokens transcript;
  std::string dialogue_act;
  std::vector<SlotSpan> slots;

  const Tokens& OneBest() const { return nbest.at(0).tokens; }
  std::vector<Tokens> NBestTokens() const;

  bool operator==(const Utterance&) const = default;
};

// Immutable collection of utterances with derived inventories.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Utterance> utterances);

  const std::vector<Utterance>& utterances() const { return utterances_; }
  size_t size() const { return utterances_.size(); }
  bool empty() const { return utterances_.empty(); }
  const Utterance& operator[](size_t i) const { return utterances_[i]; }

  const std::set<std::string>& act_inventory() const { return acts_; }
  const std::set<std::string>& slot_inventory() const { return slot_types_; }
  // Counts over all transcript and hypothesis tokens.
  const std::map<std::string, long>& vocabulary() const { return vocabulary_; }
  // Counts over transcript tokens only.
  std::map<std::string, long> TranscriptCounts() const;

 private:
  std::vector<Utterance> utterances_;
  std::set<std::string> acts_;
  std::set<std::string> slot_types_;
  std::map<std::string, long> vocabulary_;
};

// Lowercases and splits on whitespace.
Tokens Tokenize(std::string_view text);
std::string JoinTokens(const Tokens& tokens);

// JSON-lines corpus I/O. Errors name the line number and offending field.
Utterance ParseUtterance(std::string_view line, size_t line_number);
Corpus ParseCorpus(std::istream& in);
Corpus ParseCorpus(const std::filesystem::path& path);

nlohmann::json UtteranceToJson(const Utterance& utt);
void WriteCorpus(const Corpus& corpus, std::ostream& out);
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path);

// Transcripts that are dropped along with empty n-best lists and empty acts.
const std::vector<std::string>& FilteredTranscripts();
bool ShouldFilter(const Utterance& utt);
Corpus FilterUtterances(const Corpus& corpus);

// "request" + {pricerange} -> "request_pricerange". Slot types are joined in
// sorted order when an act targets several.
std::string CombineActLabel(std::string_view act,
                            const std::set<std::string>& slot_types);

using Tags = std::vector<std::string>;

Tags ToIob(const Tokens& transcript, const std::vector<SlotSpan>& slots);
std::vector<SlotSpan> SpansFromIob(const Tags& tags);
// Rewrites an I-x that does not continue a B-x/I-x into B-x.
Tags RepairIob(Tags tags);
// Checks 0 <= start < end <= length and pairwise disjointness.
void ValidateSpans(const std::vector<SlotSpan>& slots, size_t length);

// Sorted "O, B-a, I-a, B-b, I-b, ..." inventory for a set of slot types.
std::vector<std::string> IobInventory(const std::set<std::string>& slot_types);

}  // namespace wcnslu

#endif  // WCNSLU_CORPUS_H_
