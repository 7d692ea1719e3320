// include/wcnslu/metrics.h

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

#ifndef WCNSLU_METRICS_H_
#define WCNSLU_METRICS_H_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wcnslu/corpus.h"

namespace wcnslu {

using TokenPair = std::pair<Tokens, Tokens>;  // (reference, hypothesis)

// Corpus-level: total edit distance over total reference length.
double CorpusWer(const std::vector<TokenPair>& pairs);
// Fraction of pairs whose hypothesis differs from the reference.
double SentenceErrorRate(const std::vector<TokenPair>& pairs);
// Hypothesis closest to the transcript; lowest index on ties.
int OracleIndex(const std::vector<Tokens>& nbest, const Tokens& transcript);

// Micro span F1; a prediction counts only on exact (type, start, end).
double SlotF1(const std::vector<std::vector<SlotSpan>>& predicted,
              const std::vector<std::vector<SlotSpan>>& gold);
double TagErrorRate(const std::vector<Tags>& predicted, const std::vector<Tags>& gold);
double DaAccuracy(const std::vector<std::string>& predicted,
                  const std::vector<std::string>& gold);

// Semantic frame: act plus the set of (slot type, value string) pairs.
struct Frame {
  std::string act;
  std::set<std::pair<std::string, std::string>> slots;
  bool operator==(const Frame&) const = default;
};

Frame MakeFrame(const std::string& act, const Tokens& tokens, const Tags& tags);
double FrameErrorRate(const std::vector<Frame>& predicted, const std::vector<Frame>& gold);

// Maps spans over hypothesis tokens onto transcript positions. A span is
// carried over only when each of its tokens aligns as a match to a
// contiguous transcript run; otherwise it is returned with start = end = -1
// so that it can only count as a false positive.
std::vector<SlotSpan> ProjectSpans(const Tokens& tokens, const std::vector<SlotSpan>& spans,
                                   const Tokens& transcript);

// Predicted/gold tag pairs over the edit alignment of hypothesis tokens
// against the transcript. Deleted transcript words get a predicted O and
// inserted hypothesis words a gold O.
std::pair<Tags, Tags> AlignTagsToTranscript(const Tokens& tokens, const Tags& tags,
                                            const Tokens& transcript,
                                            const Tags& transcript_tags);

struct ColumnTags {
  Tags predicted;
  Tags gold;
};

// What a system produced for one utterance.
struct SystemOutput {
  std::string id;
  Tokens tokens;  // selected or corrected word sequence
  Tags tags;      // one per token
  std::string act;
  std::optional<ColumnTags> columns;  // set by confusion-network systems
};

struct EvaluationReport {
  std::string system_name;
  std::string mode = "C";  // "C" cascaded, "J" joint
  double wer = 0, ser = 0, da_acc = 0, slot_f1 = 0, ter = 0, fer = 0;
  size_t utterance_count = 0;
  std::string ter_space = "tokens";   // "tokens" or "columns"
  std::string wer_kind = "selected";  // "selected", "reconstructed", "generated"

  nlohmann::json ToJson() const;
  static EvaluationReport FromJson(const nlohmann::json& j);
};

// TER is computed in column space when every output carries column tags,
// and over the token alignment otherwise.
EvaluationReport BuildReport(const std::string& system_name, const std::string& mode,
                             const std::vector<SystemOutput>& outputs, const Corpus& gold,
                             const std::string& wer_kind = "selected");

// Aligned plain-text table in the fixed column order
// WER, SER, DA-Acc, Slot-F1, TER, FER (percentages, two decimals).
std::string RenderTable(const std::vector<EvaluationReport>& reports);
std::string FormatPercent(double ratio);

}  // namespace wcnslu

#endif  // WCNSLU_METRICS_H_
