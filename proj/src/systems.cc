// src/systems.cc

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

#include "wcnslu/systems.h"

#include "wcnslu/align.h"
#include "wcnslu/error.h"

namespace wcnslu {

LuFunction TaggerLu(const Tagger& tagger) {
  return [&tagger](const Tokens& tokens, const Utterance&) {
    if (tokens.empty()) {
      TagResult r = tagger.Tag({std::string(kEps)});
      r.tags.clear();
      return r;
    }
    return tagger.Tag(tokens);
  };
}

LuFunction ProjectedGoldLu() {
  return [](const Tokens& tokens, const Utterance& gold) {
    Tags gold_tags = ToIob(gold.transcript, gold.slots);
    TagResult r;
    r.act = gold.dialogue_act;
    r.tags.assign(tokens.size(), "O");
    for (const EditOp& op : LevenshteinAlign(gold.transcript, tokens).ops) {
      if (op.kind == EditKind::kMatch || op.kind == EditKind::kSubstitute) {
        r.tags[op.hyp] = gold_tags[op.ref];
      }
    }
    r.tags = RepairIob(std::move(r.tags));
    return r;
  };
}

std::vector<SystemOutput> SelectionOutputs(const Corpus& corpus, const Selector& select,
                                           const LuFunction& lu) {
  std::vector<SystemOutput> outputs;
  outputs.reserve(corpus.size());
  for (const auto& utt : corpus.utterances()) {
    if (utt.nbest.empty()) throw DataError(utt.id + ": empty n-best list");
    size_t index = select(utt);
    SystemOutput out;
    out.id = utt.id;
    out.tokens = utt.nbest.at(index).tokens;
    TagResult r = lu(out.tokens, utt);
    out.tags = std::move(r.tags);
    out.act = std::move(r.act);
    outputs.push_back(std::move(out));
  }
  return outputs;
}

std::vector<SystemOutput> OneBestOutputs(const Corpus& corpus, const LuFunction& lu) {
  return SelectionOutputs(corpus, [](const Utterance&) { return size_t{0}; }, lu);
}

std::vector<SystemOutput> OracleOutputs(const Corpus& corpus, const LuFunction& lu) {
  return SelectionOutputs(
      corpus,
      [](const Utterance& utt) {
        return static_cast<size_t>(OracleIndex(utt.NBestTokens(), utt.transcript));
      },
      lu);
}

std::vector<SystemOutput> TruthOutputs(const Corpus& corpus, const LuFunction& lu) {
  std::vector<SystemOutput> outputs;
  for (const auto& utt : corpus.utterances()) {
    SystemOutput out;
    out.id = utt.id;
    out.tokens = utt.transcript;
    TagResult r = lu(out.tokens, utt);
    out.tags = std::move(r.tags);
    out.act = std::move(r.act);
    outputs.push_back(std::move(out));
  }
  return outputs;
}

std::vector<SystemOutput> SlmOutputs(const Corpus& corpus, const NGramModel& slm,
                                     const LuFunction& lu) {
  return SelectionOutputs(
      corpus,
      [&slm](const Utterance& utt) {
        return static_cast<size_t>(RerankByPerplexity(slm, utt.NBestTokens()).index);
      },
      lu);
}

std::vector<SystemOutput> RankerOutputs(const Corpus& corpus, const Ranker& ranker,
                                        const LuFunction& lu) {
  return SelectionOutputs(
      corpus,
      [&ranker](const Utterance& utt) {
        return static_cast<size_t>(ranker.Rank(utt.NBestTokens()).index);
      },
      lu);
}

std::vector<SystemOutput> WcnOutputs(const Corpus& corpus, const WcnModel& model,
                                     const LuFunction* cascade) {
  std::vector<SystemOutput> outputs;
  outputs.reserve(corpus.size());
  for (const auto& utt : corpus.utterances()) {
    if (utt.nbest.empty()) throw DataError(utt.id + ": empty n-best list");
    WcnPrediction p = model.Infer(utt.NBestTokens());
    SystemOutput out;
    out.id = utt.id;
    out.tokens = p.corrected;
    if (cascade) {
      TagResult r = (*cascade)(out.tokens, utt);
      out.tags = std::move(r.tags);
      out.act = std::move(r.act);
      outputs.push_back(std::move(out));
      continue;
    }
    out.tags = p.tags;
    out.act = p.act;
    if (p.network.width() > 0) {
      // Columns added for unplaced transcript words were never predicted.
      TranscriptAlignment a = AlignTranscript(p.network, utt.transcript);
      ColumnTags columns;
      columns.gold = ProjectTrainingTargets(a, ToIob(utt.transcript, utt.slots), utt.dialogue_act)
                         .iob_tag;
      for (int original : a.original_column) {
        columns.predicted.push_back(original < 0 ? "O" : p.column_tags[original]);
      }
      out.columns = std::move(columns);
    } else {
      out.columns = ColumnTags{Tags(utt.transcript.size(), "O"), ToIob(utt.transcript, utt.slots)};
    }
    outputs.push_back(std::move(out));
  }
  return outputs;
}

std::string WcnWerKind(const WcnModel& model) {
  return model.config().head == CorrectionHead::kWordGen ? "generated" : "reconstructed";
}

}  // namespace wcnslu
