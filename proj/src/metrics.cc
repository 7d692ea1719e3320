// src/metrics.cc

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

#include "wcnslu/metrics.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

#include "wcnslu/align.h"
#include "wcnslu/error.h"

namespace wcnslu {

using nlohmann::json;

double CorpusWer(const std::vector<TokenPair>& pairs) {
  long errors = 0, total = 0;
  for (const auto& [ref, hyp] : pairs) {
    errors += LevenshteinAlign(ref, hyp).Cost();
    total += static_cast<long>(ref.size());
  }
  if (total == 0) throw DataError("WER undefined: no reference tokens");
  return static_cast<double>(errors) / static_cast<double>(total);
}

double SentenceErrorRate(const std::vector<TokenPair>& pairs) {
  if (pairs.empty()) throw DataError("SER undefined: no sentences");
  long wrong = 0;
  for (const auto& [ref, hyp] : pairs) wrong += ref != hyp;
  return static_cast<double>(wrong) / static_cast<double>(pairs.size());
}

int OracleIndex(const std::vector<Tokens>& nbest, const Tokens& transcript) {
  if (nbest.empty()) throw DataError("oracle of an empty n-best");
  int best = 0, best_dist = EditDistance(transcript, nbest[0]);
  for (size_t i = 1; i < nbest.size(); ++i) {
    int d = EditDistance(transcript, nbest[i]);
    if (d < best_dist) {
      best = static_cast<int>(i);
      best_dist = d;
    }
  }
  return best;
}

double SlotF1(const std::vector<std::vector<SlotSpan>>& predicted,
              const std::vector<std::vector<SlotSpan>>& gold) {
  if (predicted.size() != gold.size()) {
    throw DataError("slot F1: prediction and gold utterance counts differ");
  }
  long tp = 0, n_pred = 0, n_gold = 0;
  for (size_t u = 0; u < gold.size(); ++u) {
    std::multiset<SlotSpan> remaining(gold[u].begin(), gold[u].end());
    n_gold += static_cast<long>(gold[u].size());
    n_pred += static_cast<long>(predicted[u].size());
    for (const auto& span : predicted[u]) {
      auto it = remaining.find(span);
      if (it != remaining.end()) {
        ++tp;
        remaining.erase(it);
      }
    }
  }
  double p = n_pred ? static_cast<double>(tp) / n_pred : 0.0;
  double r = n_gold ? static_cast<double>(tp) / n_gold : 0.0;
  if (n_pred == 0 && n_gold == 0) return 1.0;
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

double TagErrorRate(const std::vector<Tags>& predicted, const std::vector<Tags>& gold) {
  if (predicted.size() != gold.size()) {
    throw DataError("TER: prediction and gold utterance counts differ");
  }
  long wrong = 0, total = 0;
  for (size_t u = 0; u < gold.size(); ++u) {
    if (predicted[u].size() != gold[u].size()) {
      throw DataError("TER: tag sequence length mismatch in utterance " + std::to_string(u));
    }
    for (size_t i = 0; i < gold[u].size(); ++i) wrong += predicted[u][i] != gold[u][i];
    total += static_cast<long>(gold[u].size());
  }
  return total ? static_cast<double>(wrong) / static_cast<double>(total) : 0.0;
}

double DaAccuracy(const std::vector<std::string>& predicted,
                  const std::vector<std::string>& gold) {
  if (predicted.size() != gold.size()) throw DataError("DA-Acc: length mismatch");
  if (gold.empty()) throw DataError("DA-Acc undefined: no utterances");
  long right = 0;
  for (size_t i = 0; i < gold.size(); ++i) right += predicted[i] == gold[i];
  return static_cast<double>(right) / static_cast<double>(gold.size());
}

Frame MakeFrame(const std::string& act, const Tokens& tokens, const Tags& tags) {
  if (tokens.size() != tags.size()) throw DataError("frame: tokens and tags differ in length");
  Frame f;
  f.act = act;
  for (const auto& span : SpansFromIob(tags)) {
    Tokens value(tokens.begin() + span.start, tokens.begin() + span.end);
    f.slots.emplace(span.type, JoinTokens(value));
  }
  return f;
}

double FrameErrorRate(const std::vector<Frame>& predicted, const std::vector<Frame>& gold) {
  if (predicted.size() != gold.size()) throw DataError("FER: length mismatch");
  if (gold.empty()) throw DataError("FER undefined: no utterances");
  long wrong = 0;
  for (size_t i = 0; i < gold.size(); ++i) wrong += !(predicted[i] == gold[i]);
  return static_cast<double>(wrong) / static_cast<double>(gold.size());
}

std::vector<SlotSpan> ProjectSpans(const Tokens& tokens, const std::vector<SlotSpan>& spans,
                                   const Tokens& transcript) {
  std::vector<int> match_to(tokens.size(), -1);
  for (const auto& op : LevenshteinAlign(transcript, tokens).ops) {
    if (op.kind == EditKind::kMatch) match_to[op.hyp] = op.ref;
  }
  std::vector<SlotSpan> out;
  for (const auto& span : spans) {
    bool ok = true;
    for (int i = span.start; i < span.end && ok; ++i) {
      ok = match_to[i] >= 0 && (i == span.start || match_to[i] == match_to[i - 1] + 1);
    }
    if (ok) {
      out.push_back({span.type, match_to[span.start], match_to[span.end - 1] + 1});
    } else {
      out.push_back({span.type, -1, -1});
    }
  }
  return out;
}

std::pair<Tags, Tags> AlignTagsToTranscript(const Tokens& tokens, const Tags& tags,
                                            const Tokens& transcript,
                                            const Tags& transcript_tags) {
  std::pair<Tags, Tags> out;
  for (const auto& op : LevenshteinAlign(transcript, tokens).ops) {
    switch (op.kind) {
      case EditKind::kMatch:
      case EditKind::kSubstitute:
        out.first.push_back(tags[op.hyp]);
        out.second.push_back(transcript_tags[op.ref]);
        break;
      case EditKind::kDelete:
        out.first.push_back("O");
        out.second.push_back(transcript_tags[op.ref]);
        break;
      case EditKind::kInsert:
        out.first.push_back(tags[op.hyp]);
        out.second.push_back("O");
        break;
    }
  }
  return out;
}

json EvaluationReport::ToJson() const {
  return {{"system", system_name}, {"mode", mode},       {"wer", wer},
          {"ser", ser},            {"da_acc", da_acc},   {"slot_f1", slot_f1},
          {"ter", ter},            {"fer", fer},         {"utterances", utterance_count},
          {"ter_space", ter_space}, {"wer_kind", wer_kind}};
}

EvaluationReport EvaluationReport::FromJson(const json& j) {
  EvaluationReport r;
  try {
    r.system_name = j.at("system").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.wer = j.at("wer").get<double>();
    r.ser = j.at("ser").get<double>();
    r.da_acc = j.at("da_acc").get<double>();
    r.slot_f1 = j.at("slot_f1").get<double>();
    r.ter = j.at("ter").get<double>();
    r.fer = j.at("fer").get<double>();
    r.utterance_count = j.at("utterances").get<size_t>();
    r.ter_space = j.value("ter_space", "tokens");
    r.wer_kind = j.value("wer_kind", "selected");
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
  return r;
}

EvaluationReport BuildReport(const std::string& system_name, const std::string& mode,
                             const std::vector<SystemOutput>& outputs, const Corpus& gold,
                             const std::string& wer_kind) {
  std::unordered_map<std::string, const SystemOutput*> by_id;
  for (const auto& o : outputs) by_id[o.id] = &o;

  std::vector<TokenPair> pairs;
  std::vector<std::vector<SlotSpan>> pred_spans, gold_spans;
  std::vector<Tags> pred_tags, gold_tags;
  std::vector<Frame> pred_frames, gold_frames;
  std::vector<std::string> pred_acts, gold_acts;
  bool columns = !outputs.empty();
  for (const auto& o : outputs) columns = columns && o.columns.has_value();

  for (const auto& utt : gold.utterances()) {
    auto it = by_id.find(utt.id);
    if (it == by_id.end()) throw DataError("no system output for utterance '" + utt.id + "'");
    const SystemOutput& out = *it->second;
    if (out.tags.size() != out.tokens.size()) {
      throw DataError("output '" + utt.id + "': tag count differs from token count");
    }
    Tags truth_tags = ToIob(utt.transcript, utt.slots);
    pairs.emplace_back(utt.transcript, out.tokens);
    pred_spans.push_back(ProjectSpans(out.tokens, SpansFromIob(out.tags), utt.transcript));
    gold_spans.push_back(utt.slots);
    if (columns) {
      pred_tags.push_back(out.columns->predicted);
      gold_tags.push_back(out.columns->gold);
    } else {
      auto aligned = AlignTagsToTranscript(out.tokens, out.tags, utt.transcript, truth_tags);
      pred_tags.push_back(std::move(aligned.first));
      gold_tags.push_back(std::move(aligned.second));
    }
    pred_frames.push_back(MakeFrame(out.act, out.tokens, out.tags));
    gold_frames.push_back(MakeFrame(utt.dialogue_act, utt.transcript, truth_tags));
    pred_acts.push_back(out.act);
    gold_acts.push_back(utt.dialogue_act);
  }

  EvaluationReport r;
  r.system_name = system_name;
  r.mode = mode;
  r.utterance_count = gold.size();
  r.wer = CorpusWer(pairs);
  r.ser = SentenceErrorRate(pairs);
  r.da_acc = DaAccuracy(pred_acts, gold_acts);
  r.slot_f1 = SlotF1(pred_spans, gold_spans);
  r.ter = TagErrorRate(pred_tags, gold_tags);
  r.fer = FrameErrorRate(pred_frames, gold_frames);
  r.ter_space = columns ? "columns" : "tokens";
  r.wer_kind = wer_kind;
  return r;
}

std::string FormatPercent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * ratio);
  return buf;
}

std::string RenderTable(const std::vector<EvaluationReport>& reports) {
  const std::vector<std::string> header = {"Experiments", "WER", "SER", "DA-Acc",
                                           "Slot-F1", "TER", "FER"};
  std::vector<std::vector<std::string>> rows = {header};
  std::vector<std::string> notes;
  for (const auto& r : reports) {
    bool masked = r.wer_kind == "generated";
    rows.push_back({r.system_name + " (" + r.mode + ")",
                    masked ? "-" : FormatPercent(r.wer),
                    masked ? "-" : FormatPercent(r.ser),
                    FormatPercent(r.da_acc),
                    FormatPercent(r.slot_f1),
                    FormatPercent(r.ter),
                    FormatPercent(r.fer)});
    if (masked) {
      notes.push_back(r.system_name + ": correction WER (generated) " + FormatPercent(r.wer) +
                      ", SER " + FormatPercent(r.ser));
    }
    if (r.ter_space == "columns") notes.push_back(r.system_name + ": TER over aligned columns");
  }
  std::vector<size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t c = 0; c < rows[i].size(); ++c) {
      const std::string& cell = rows[i][c];
      if (c == 0) {
        os << cell << std::string(width[c] - cell.size(), ' ');
      } else {
        os << " | " << std::string(width[c] - cell.size(), ' ') << cell;
      }
    }
    os << '\n';
    if (i == 0) {
      size_t total = width[0];
      for (size_t c = 1; c < width.size(); ++c) total += width[c] + 3;
      os << std::string(total, '-') << '\n';
    }
  }
  for (const auto& n : notes) os << "  * " << n << '\n';
  return os.str();
}

}  // namespace wcnslu
