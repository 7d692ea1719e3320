// src/align.cc

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

#include "wcnslu/align.h"

#include <algorithm>
#include <map>

#include "wcnslu/error.h"
#include "wcnslu/vocab.h"

namespace wcnslu {

using nlohmann::json;

int EditScript::Cost() const {
  int cost = 0;
  for (const auto& op : ops) cost += op.kind != EditKind::kMatch;
  return cost;
}

namespace {

std::vector<std::vector<int>> DistanceTable(const Tokens& ref, const Tokens& hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1));
  for (size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      int diag = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  return d;
}

}  // namespace

EditScript LevenshteinAlign(const Tokens& reference, const Tokens& hypothesis) {
  auto d = DistanceTable(reference, hypothesis);
  EditScript script;
  int i = static_cast<int>(reference.size());
  int j = static_cast<int>(hypothesis.size());
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && reference[i - 1] == hypothesis[j - 1] &&
        d[i][j] == d[i - 1][j - 1]) {
      script.ops.push_back(EditOp::Match(i - 1, j - 1));
      --i, --j;
    } else if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + 1) {
      script.ops.push_back(EditOp::Substitute(i - 1, j - 1));
      --i, --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      script.ops.push_back(EditOp::Delete(i - 1));
      --i;
    } else {
      script.ops.push_back(EditOp::Insert(j - 1, i));
      --j;
    }
  }
  std::reverse(script.ops.begin(), script.ops.end());
  return script;
}

int EditDistance(const Tokens& reference, const Tokens& hypothesis) {
  // Two-row variant of the table above.
  const size_t m = hypothesis.size();
  std::vector<int> prev(m + 1), cur(m + 1);
  for (size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= reference.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= m; ++j) {
      int diag = prev[j - 1] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

Tokens ConfusionNetwork::Row(size_t i) const {
  Tokens out;
  for (const auto& tok : grid.at(i)) {
    if (tok != kEps) out.push_back(tok);
  }
  return out;
}

ConfusionNetwork BuildConfusionNetwork(const std::vector<Tokens>& nbest) {
  if (nbest.empty()) throw DataError("cannot build a confusion network from an empty n-best");
  const Tokens& onebest = nbest[0];
  const int len = static_cast<int>(onebest.size());
  const std::string eps(kEps);

  std::vector<EditScript> scripts(nbest.size());
  std::vector<int> width(len + 1, 0);
  for (size_t h = 1; h < nbest.size(); ++h) {
    scripts[h] = LevenshteinAlign(onebest, nbest[h]);
    std::vector<int> count(len + 1, 0);
    for (const auto& op : scripts[h].ops) {
      if (op.kind == EditKind::kInsert) ++count[op.gap];
    }
    for (int g = 0; g <= len; ++g) width[g] = std::max(width[g], count[g]);
  }

  ConfusionNetwork cn;
  cn.source = nbest;
  std::vector<int> gap_start(len + 1), anchor_col(len);
  for (int g = 0; g <= len; ++g) {
    gap_start[g] = static_cast<int>(cn.columns.size());
    for (int k = 0; k < width[g]; ++k) {
      cn.columns.push_back({Column::Kind::kGap, g, k, ""});
    }
    if (g < len) {
      anchor_col[g] = static_cast<int>(cn.columns.size());
      cn.columns.push_back({Column::Kind::kAnchor, g, 0, onebest[g]});
    }
  }

  const size_t cols = cn.columns.size();
  cn.grid.assign(nbest.size(), Tokens(cols, eps));
  for (int r = 0; r < len; ++r) cn.grid[0][anchor_col[r]] = onebest[r];
  for (size_t h = 1; h < nbest.size(); ++h) {
    std::vector<int> filled(len + 1, 0);
    for (const auto& op : scripts[h].ops) {
      switch (op.kind) {
        case EditKind::kMatch:
        case EditKind::kSubstitute:
          cn.grid[h][anchor_col[op.ref]] = nbest[h][op.hyp];
          break;
        case EditKind::kDelete:
          break;  // cell stays <eps>
        case EditKind::kInsert:
          cn.grid[h][gap_start[op.gap] + filled[op.gap]++] = nbest[h][op.hyp];
          break;
      }
    }
  }
  return cn;
}

TranscriptAlignment AlignTranscript(const ConfusionNetwork& cn, const Tokens& transcript) {
  const Tokens& onebest = cn.source.at(0);
  const int len = static_cast<int>(onebest.size());
  const int cols = static_cast<int>(cn.width());
  const std::string eps(kEps);

  std::vector<int> anchor_col(len, -1);
  std::vector<std::vector<int>> gap_cols(len + 1);
  for (int c = 0; c < cols; ++c) {
    const Column& col = cn.columns[c];
    if (col.is_anchor()) {
      anchor_col[col.position] = c;
    } else {
      gap_cols[col.position].push_back(c);
    }
  }

  EditScript script = LevenshteinAlign(onebest, transcript);
  std::vector<int> mapped(cols, -1);
  std::vector<std::vector<int>> inserted(len + 1);
  for (const auto& op : script.ops) {
    if (op.kind == EditKind::kMatch || op.kind == EditKind::kSubstitute) {
      mapped[anchor_col[op.ref]] = op.hyp;
    } else if (op.kind == EditKind::kInsert) {
      inserted[op.gap].push_back(op.hyp);
    }
  }

  // Place inserted transcript words into the gap's existing columns, in
  // order, preferring a column where some hypothesis already has the word.
  std::vector<std::vector<int>> overflow(len + 1);
  for (int g = 0; g <= len; ++g) {
    const auto& existing = gap_cols[g];
    size_t pos = 0;
    for (int t : inserted[g]) {
      size_t chosen = existing.size();
      for (size_t k = pos; k < existing.size() && chosen == existing.size(); ++k) {
        for (const auto& row : cn.grid) {
          if (row[existing[k]] == transcript[t]) {
            chosen = k;
            break;
          }
        }
      }
      if (chosen == existing.size() && pos < existing.size()) chosen = pos;
      if (chosen < existing.size()) {
        mapped[existing[chosen]] = t;
        pos = chosen + 1;
      } else {
        overflow[g].push_back(t);
      }
    }
  }

  TranscriptAlignment out;
  out.transcript = transcript;
  ConfusionNetwork& net = out.network;
  net.source = cn.source;
  net.grid.assign(cn.rows(), Tokens());
  auto emit_existing = [&](int c) {
    net.columns.push_back(cn.columns[c]);
    for (size_t r = 0; r < cn.rows(); ++r) net.grid[r].push_back(cn.grid[r][c]);
    out.column_to_transcript.push_back(mapped[c]);
    out.original_column.push_back(c);
  };
  for (int g = 0; g <= len; ++g) {
    for (int c : gap_cols[g]) emit_existing(c);
    int ordinal = static_cast<int>(gap_cols[g].size());
    for (int t : overflow[g]) {
      net.columns.push_back({Column::Kind::kGap, g, ordinal++, ""});
      for (auto& row : net.grid) row.push_back(eps);
      out.column_to_transcript.push_back(t);
      out.original_column.push_back(-1);
    }
    if (g < len) emit_existing(anchor_col[g]);
  }
  return out;
}

TrainingTargets ProjectTrainingTargets(const TranscriptAlignment& alignment,
                                       const Tags& transcript_tags,
                                       const std::string& act) {
  if (transcript_tags.size() != alignment.transcript.size()) {
    throw DataError("tag count " + std::to_string(transcript_tags.size()) +
                    " does not match transcript length " +
                    std::to_string(alignment.transcript.size()));
  }
  const ConfusionNetwork& net = alignment.network;
  TrainingTargets targets;
  targets.act = act;
  for (size_t c = 0; c < net.width(); ++c) {
    int t = alignment.column_to_transcript[c];
    std::string word = t >= 0 ? alignment.transcript[t] : std::string(kEps);
    int bin = 0;
    for (size_t r = 0; r < net.rows(); ++r) {
      if (net.grid[r][c] == word) {
        bin = static_cast<int>(r);
        break;
      }
    }
    targets.iob_tag.push_back(t >= 0 ? transcript_tags[t] : "O");
    targets.correction_word.push_back(std::move(word));
    targets.bin_index.push_back(bin);
  }
  return targets;
}

json NetworkToJson(const ConfusionNetwork& cn) {
  json cols = json::array();
  for (const auto& c : cn.columns) {
    cols.push_back({{"kind", c.is_anchor() ? "anchor" : "gap"},
                    {"token", c.is_anchor() ? json(c.token) : json(nullptr)},
                    {"position", c.position},
                    {"ordinal", c.ordinal}});
  }
  return {{"columns", cols}, {"grid", cn.grid}};
}

ConfusionNetwork NetworkFromJson(const json& j) {
  ConfusionNetwork cn;
  try {
    for (const auto& c : j.at("columns")) {
      Column col;
      std::string kind = c.at("kind").get<std::string>();
      if (kind == "anchor") {
        col.kind = Column::Kind::kAnchor;
        col.token = c.at("token").get<std::string>();
      } else if (kind == "gap") {
        col.kind = Column::Kind::kGap;
      } else {
        throw DataError("unknown column kind '" + kind + "'");
      }
      col.position = c.value("position", 0);
      col.ordinal = c.value("ordinal", 0);
      cn.columns.push_back(std::move(col));
    }
    cn.grid = j.at("grid").get<std::vector<Tokens>>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed confusion network: ") + e.what());
  }
  for (const auto& row : cn.grid) {
    if (row.size() != cn.columns.size()) throw DataError("ragged confusion network grid");
  }
  for (size_t i = 0; i < cn.grid.size(); ++i) cn.source.push_back(cn.Row(i));
  return cn;
}

}  // namespace wcnslu
