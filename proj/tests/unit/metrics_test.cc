// tests/unit/metrics_test.cc

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

#include <numeric>

#include "doctest.h"
#include "test_util.h"
#include "wcnslu/align.h"
#include "wcnslu/error.h"
#include "wcnslu/metrics.h"

using namespace wcnslu;
using wcnslu::testing::MakeUtterance;
using wcnslu::testing::RandomTokens;
using wcnslu::testing::Words;

namespace {

const std::vector<std::string> kAlphabet = {"a", "b", "c", "d"};

SystemOutput Output(const Utterance& u, const Tokens& tokens, const Tags& tags,
                    const std::string& act) {
  return {u.id, tokens, tags, act, std::nullopt};
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("corpus WER") {
    CHECK(CorpusWer({{Words("a b c"), Words("a x c")}}) == doctest::Approx(1.0 / 3));
    CHECK(CorpusWer({{Words("a b"), Words("a b")}}) == 0.0);
    CHECK(CorpusWer({{Words("a b"), Words("a")}, {Words("c"), Words("c d")}}) ==
          doctest::Approx(2.0 / 3));
    CHECK_THROWS_AS(CorpusWer({{{}, Words("a")}}), DataError);
  }

  TEST_CASE("sentence error rate") {
    CHECK(SentenceErrorRate({{Words("a"), Words("a")}}) == 0.0);
    CHECK(SentenceErrorRate({{Words("a"), Words("b")}}) == 1.0);
    CHECK(SentenceErrorRate({{Words("a"), Words("a")}, {Words("a"), Words("b")}}) == 0.5);
    CHECK_THROWS_AS(SentenceErrorRate({}), DataError);
  }

  TEST_CASE("oracle index") {
    CHECK(OracleIndex({Words("a b"), Words("a c"), Words("a")}, Words("a c")) == 1);
    CHECK(OracleIndex({Words("x"), Words("x"), Words("x")}, Words("y")) == 0);
    // Distances 2, 0, 1 over a four-word transcript.
    CHECK(OracleIndex({Words("a b"), Words("a b c d"), Words("a b c")}, Words("a b c d")) == 1);
  }

  TEST_CASE("oracle minimality and WER lower bound on random utterances") {
    Rng rng(31);
    std::vector<TokenPair> oracle_pairs, random_pairs;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Tokens> nbest;
      size_t n = 1 + rng.Index(10);
      for (size_t i = 0; i < n; ++i) nbest.push_back(RandomTokens(rng, 6, kAlphabet));
      Tokens transcript = RandomTokens(rng, 6, kAlphabet, 1);
      int o = OracleIndex(nbest, transcript);
      int best = EditDistance(transcript, nbest[o]);
      for (size_t j = 0; j < n; ++j) {
        CHECK(best <= EditDistance(transcript, nbest[j]));
        if (static_cast<int>(j) < o) CHECK(best < EditDistance(transcript, nbest[j]));
      }
      oracle_pairs.push_back({transcript, nbest[o]});
      random_pairs.push_back({transcript, nbest[rng.Index(n)]});
    }
    CHECK(CorpusWer(oracle_pairs) <= CorpusWer(random_pairs));
  }

  TEST_CASE("slot F1") {
    std::vector<SlotSpan> gold = {{"food", 1, 2}, {"area", 3, 4}};
    CHECK(SlotF1({gold}, {gold}) == 1.0);
    CHECK(SlotF1({{}}, {gold}) == 0.0);
    CHECK(SlotF1({{{"food", 1, 2}}}, {gold}) == doctest::Approx(2.0 / 3));
    CHECK(SlotF1({{{"food", 1, 3}}}, {gold}) == 0.0);
    // Nothing predicted and nothing to find counts as perfect.
    CHECK(SlotF1({{}, {}}, {{}, {}}) == 1.0);
  }

  TEST_CASE("slot F1 is one exactly when span sets agree") {
    Rng rng(32);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<std::vector<SlotSpan>> pred(3), gold(3);
      for (size_t u = 0; u < 3; ++u) {
        for (int k = 0, n = static_cast<int>(rng.Index(3)); k < n; ++k) {
          int s = static_cast<int>(rng.Index(3));
          gold[u].push_back({"food", 2 * k * 3 + s, 2 * k * 3 + s + 1});
        }
        pred[u] = gold[u];
        if (rng.Bernoulli(0.5) && !pred[u].empty()) pred[u].back().end += 1;
      }
      CHECK((SlotF1(pred, gold) == 1.0) == (pred == gold));
    }
  }

  TEST_CASE("tag error rate") {
    CHECK(TagErrorRate({{"O", "B-food"}}, {{"O", "B-food"}}) == 0.0);
    CHECK(TagErrorRate({{"O", "B-food"}}, {{"O", "O"}}) == 0.5);
    CHECK(TagErrorRate({{"O", "O", "O"}, {"O"}}, {{"O", "B-food", "O"}, {"O"}}) == 0.25);
    CHECK_THROWS_AS(TagErrorRate({{"O"}}, {{"O", "O"}}), DataError);
  }

  TEST_CASE("frame error rate") {
    Frame thai{"inform", {{"food", "thai"}}};
    Frame indian{"inform", {{"food", "indian"}}};
    CHECK(FrameErrorRate({thai, thai}, {thai, thai}) == 0.0);
    CHECK(FrameErrorRate({indian, thai}, {thai, thai}) == 0.5);
    CHECK(FrameErrorRate({Frame{"request_food", {}}}, {Frame{"inform", {}}}) == 1.0);
    CHECK_THROWS_AS(FrameErrorRate({}, {}), DataError);
    Frame f = MakeFrame("inform", Words("cheap thai food in the north part"),
                        {"B-pricerange", "B-food", "O", "O", "O", "B-area", "I-area"});
    CHECK(f.slots == std::set<std::pair<std::string, std::string>>{
                         {"pricerange", "cheap"}, {"food", "thai"}, {"area", "north part"}});
  }

  TEST_CASE("dialogue act accuracy") {
    CHECK(DaAccuracy({"a", "b"}, {"a", "b"}) == 1.0);
    CHECK(DaAccuracy({"a", "x"}, {"a", "b"}) == 0.5);
    CHECK_THROWS_AS(DaAccuracy({}, {}), DataError);
    CHECK_THROWS_AS(DaAccuracy({"a"}, {"a", "b"}), DataError);
  }

  TEST_CASE("span projection keeps only exactly matched runs") {
    Tokens transcript = Words("i want thai food");
    // "thai" matches transcript index 2.
    auto spans = ProjectSpans(Words("want thai food"), {{"food", 1, 2}}, transcript);
    CHECK(spans == std::vector<SlotSpan>{{"food", 2, 3}});
    // Substituted word cannot carry a span.
    spans = ProjectSpans(Words("i want tie food"), {{"food", 2, 3}}, transcript);
    CHECK(spans == std::vector<SlotSpan>{{"food", -1, -1}});
  }

  TEST_CASE("reports: perfect system and missing ids") {
    Utterance u1 = MakeUtterance("1", {"thai food"}, "thai food", "inform", {{"food", 0, 1}});
    Utterance u2 = MakeUtterance("2", {"bye"}, "bye", "bye");
    Corpus gold({u1, u2});
    std::vector<SystemOutput> perfect = {Output(u1, u1.transcript, {"B-food", "O"}, "inform"),
                                         Output(u2, u2.transcript, {"O"}, "bye")};
    EvaluationReport r = BuildReport("perfect", "C", perfect, gold);
    CHECK(r.wer == 0.0);
    CHECK(r.ser == 0.0);
    CHECK(r.da_acc == 1.0);
    CHECK(r.slot_f1 == 1.0);
    CHECK(r.ter == 0.0);
    CHECK(r.fer == 0.0);
    CHECK(r.utterance_count == 2);
    CHECK(r.ter_space == "tokens");
    CHECK(EvaluationReport::FromJson(r.ToJson()).ToJson() == r.ToJson());

    perfect.pop_back();
    try {
      BuildReport("partial", "C", perfect, gold);
      FAIL("expected an error");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
  }

  TEST_CASE("report on a noisy selection") {
    Utterance u = MakeUtterance("1", {"tie food", "thai food"}, "thai food", "inform",
                                {{"food", 0, 1}});
    Corpus gold({u});
    EvaluationReport r =
        BuildReport("x", "C", {Output(u, Words("tie food"), {"B-food", "O"}, "inform")}, gold);
    CHECK(r.wer == 0.5);
    CHECK(r.ser == 1.0);
    CHECK(r.da_acc == 1.0);
    CHECK(r.slot_f1 == 0.0);  // the span sits on a substituted word
    CHECK(r.ter == 0.0);      // tags agree position by position
    CHECK(r.fer == 1.0);      // value "tie" differs from "thai"
    CHECK(r.fer >= 1.0 - r.da_acc);
  }

  TEST_CASE("column-space TER when every output carries column tags") {
    Utterance u = MakeUtterance("1", {"a"}, "a", "x");
    SystemOutput o = Output(u, u.transcript, {"O"}, "x");
    o.columns = ColumnTags{{"O", "B-food"}, {"O", "O"}};
    EvaluationReport r = BuildReport("j", "J", {o}, Corpus({u}), "reconstructed");
    CHECK(r.ter_space == "columns");
    CHECK(r.ter == 0.5);
    CHECK(r.wer_kind == "reconstructed");
  }

  TEST_CASE("metrics are invariant to utterance order") {
    Rng rng(33);
    std::vector<Utterance> utts;
    std::vector<SystemOutput> outs;
    for (int i = 0; i < 40; ++i) {
      Tokens t = RandomTokens(rng, 5, kAlphabet, 1);
      Utterance u;
      u.id = std::to_string(i);
      u.transcript = t;
      u.nbest = {{t, std::nullopt}};
      u.dialogue_act = rng.Bernoulli(0.5) ? "x" : "y";
      u.slots = {{"food", 0, 1}};
      utts.push_back(u);
      Tokens h = RandomTokens(rng, 5, kAlphabet, 1);
      Tags tags(h.size(), "O");
      tags[0] = "B-food";
      outs.push_back({u.id, h, tags, rng.Bernoulli(0.5) ? "x" : "y", std::nullopt});
    }
    EvaluationReport a = BuildReport("s", "C", outs, Corpus(utts));
    std::reverse(utts.begin(), utts.end());
    std::reverse(outs.begin(), outs.end());
    EvaluationReport b = BuildReport("s", "C", outs, Corpus(utts));
    CHECK(a.ToJson() == b.ToJson());
    CHECK(a.fer >= 1.0 - a.da_acc);
  }

  TEST_CASE("table rendering") {
    EvaluationReport a;
    a.system_name = "1-best";
    a.wer = 0.2999;
    a.fer = 0.2143;
    EvaluationReport b = a;
    b.system_name = "WCN Pointer";
    b.mode = "J";
    b.wer_kind = "generated";
    std::string table = RenderTable({a, b});
    CHECK(table.find("Experiments") != std::string::npos);
    size_t w = table.find("WER"), s = table.find("SER"), d = table.find("DA-Acc"),
           f1 = table.find("Slot-F1"), t = table.find("TER"), fe = table.find("FER");
    CHECK(w < s);
    CHECK(s < d);
    CHECK(d < f1);
    CHECK(f1 < t);
    CHECK(t < fe);
    CHECK(table.find("1-best (C)") != std::string::npos);
    CHECK(table.find("WCN Pointer (J)") != std::string::npos);
    CHECK(table.find("29.99") != std::string::npos);
    CHECK(table.find("21.43") != std::string::npos);
    CHECK(FormatPercent(0.29994) == "29.99");
  }
}
