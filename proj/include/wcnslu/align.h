// include/wcnslu/align.h

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

#ifndef WCNSLU_ALIGN_H_
#define WCNSLU_ALIGN_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "wcnslu/corpus.h"

namespace wcnslu {

enum class EditKind { kMatch, kSubstitute, kDelete, kInsert };

// ref/hyp are token indices; -1 where the operation does not touch that
// side. gap is the number of reference tokens consumed before an insertion.
struct EditOp {
  EditKind kind;
  int ref = -1;
  int hyp = -1;
  int gap = -1;

  static EditOp Match(int r, int h) { return {EditKind::kMatch, r, h, -1}; }
  static EditOp Substitute(int r, int h) { return {EditKind::kSubstitute, r, h, -1}; }
  static EditOp Delete(int r) { return {EditKind::kDelete, r, -1, -1}; }
  static EditOp Insert(int h, int g) { return {EditKind::kInsert, -1, h, g}; }

  bool operator==(const EditOp&) const = default;
};

struct EditScript {
  std::vector<EditOp> ops;
  int Cost() const;
};

// Unit-cost word alignment. Traceback prefers match, then substitution,
// then deletion, then insertion among equal-cost predecessors.
EditScript LevenshteinAlign(const Tokens& reference, const Tokens& hypothesis);
int EditDistance(const Tokens& reference, const Tokens& hypothesis);

struct Column {
  enum class Kind { kAnchor, kGap };
  Kind kind = Kind::kAnchor;
  // Anchor: index of the 1-best token. Gap: gap position in 0..len(1-best).
  int position = 0;
  // Gap columns: rank within their gap; 0 for anchors.
  int ordinal = 0;
  std::string token;  // the 1-best token for anchors, empty for gaps

  bool is_anchor() const { return kind == Kind::kAnchor; }
  bool operator==(const Column&) const = default;
};

// N x T grid of the n-best aligned on the 1-best skeleton. Cells where a
// hypothesis contributes no word hold <eps>.
struct ConfusionNetwork {
  std::vector<Column> columns;
  std::vector<Tokens> grid;          // one row per hypothesis
  std::vector<Tokens> source;        // the n-best as given

  size_t rows() const { return grid.size(); }
  size_t width() const { return columns.size(); }
  // Row with <eps> removed.
  Tokens Row(size_t i) const;
  bool operator==(const ConfusionNetwork&) const = default;
};

ConfusionNetwork BuildConfusionNetwork(const std::vector<Tokens>& nbest);

// Result of aligning a transcript to a network during training. The
// network may gain all-<eps> gap columns for transcript words that no
// existing column could host.
struct TranscriptAlignment {
  ConfusionNetwork network;
  Tokens transcript;
  std::vector<int> column_to_transcript;  // -1 when no transcript word
  std::vector<int> original_column;       // -1 for columns added here
};

TranscriptAlignment AlignTranscript(const ConfusionNetwork& cn,
                                    const Tokens& transcript);

struct TrainingTargets {
  Tokens correction_word;
  std::vector<int> bin_index;
  Tags iob_tag;
  std::string act;
};

TrainingTargets ProjectTrainingTargets(const TranscriptAlignment& alignment,
                                       const Tags& transcript_tags,
                                       const std::string& act);

nlohmann::json NetworkToJson(const ConfusionNetwork& cn);
ConfusionNetwork NetworkFromJson(const nlohmann::json& j);

}  // namespace wcnslu

#endif  // WCNSLU_ALIGN_H_
