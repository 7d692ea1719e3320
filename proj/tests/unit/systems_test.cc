// tests/unit/systems_test.cc

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

#include <filesystem>
#include <fstream>

#include "../common/grad_cases.h"
#include "doctest.h"
#include "test_util.h"
#include "wcnslu/dstc2.h"
#include "wcnslu/error.h"
#include "wcnslu/systems.h"

using namespace wcnslu;
using namespace wcnslu::testing;
using nlohmann::json;

namespace {

Corpus Fixture() {
  return Corpus({MakeUtterance("a", {"cheap tie food", "cheap thai food"}, "cheap thai food",
                               "inform", {{"pricerange", 0, 1}, {"food", 1, 2}}),
                 MakeUtterance("b", {"the north part", "north part"}, "north part", "inform",
                               {{"area", 0, 1}}),
                 MakeUtterance("c", {"phone number"}, "phone number", "request_phone")});
}

json AsrTurn(const std::string& prompt, std::vector<std::pair<std::string, double>> hyps) {
  json asr = json::array();
  for (const auto& [text, score] : hyps) asr.push_back({{"asr-hyp", text}, {"score", score}});
  return {{"output", {{"transcript", prompt}}}, {"input", {{"live", {{"asr-hyps", asr}}}}}};
}

json LabelTurn(int index, const std::string& transcription, json acts) {
  return {{"turn-index", index},
          {"transcription", transcription},
          {"semantics", {{"json", std::move(acts)}}}};
}

// Slot pairs as DSTC2 writes them: an array of two-element arrays. A braced
// list of pairs would become a JSON object instead.
json Slots(std::vector<std::pair<std::string, std::string>> pairs) {
  json out = json::array();
  for (const auto& [a, b] : pairs) out.push_back(json::array({a, b}));
  return out;
}

void WriteJson(const std::filesystem::path& path, const json& j) {
  std::ofstream(path) << j.dump(1);
}

}  // namespace

TEST_SUITE("systems") {
  TEST_CASE("projected gold LU carries tags over the alignment") {
    LuFunction lu = ProjectedGoldLu();
    const Corpus c = Fixture();
    TagResult r = lu(Words("cheap tie food please"), c[0]);
    CHECK(r.tags == Tags{"B-pricerange", "B-food", "O", "O"});
    CHECK(r.act == "inform");
    CHECK(lu({}, c[0]).tags.empty());
  }

  TEST_CASE("truth and oracle selections") {
    const Corpus c = Fixture();
    LuFunction lu = ProjectedGoldLu();
    EvaluationReport truth = BuildReport("truth", "C", TruthOutputs(c, lu), c);
    CHECK(truth.wer == 0.0);
    CHECK(truth.fer == 0.0);
    CHECK(truth.slot_f1 == 1.0);
    CHECK(truth.da_acc == 1.0);

    auto oracle = OracleOutputs(c, lu);
    CHECK(oracle[0].tokens == Words("cheap thai food"));
    CHECK(oracle[1].tokens == Words("north part"));
    auto one_best = OneBestOutputs(c, lu);
    CHECK(one_best[1].tokens == Words("the north part"));
    CHECK(BuildReport("o", "C", oracle, c).wer == 0.0);
    // 1 substitution + 1 insertion over 7 reference words.
    CHECK(BuildReport("1", "C", one_best, c).wer == doctest::Approx(2.0 / 7.0));
  }

  TEST_CASE("an empty selected hypothesis still gets an act") {
    Corpus c({MakeUtterance("e", {"", "hello"}, "hello", "hello")});
    Tagger t = Tagger::Create(TinyCorpus(), TaggerConfig(), 1);
    auto out = OneBestOutputs(c, TaggerLu(t));
    CHECK(out[0].tokens.empty());
    CHECK(out[0].tags.empty());
    CHECK_FALSE(out[0].act.empty());
  }

  TEST_CASE("slm and ranker systems select from the list") {
    const Corpus c = Fixture();
    NGramModel slm = NGramModel::Train({Words("cheap thai food"), Words("north part")}, {});
    auto slm_out = SlmOutputs(c, slm, ProjectedGoldLu());
    RankerConfig rc;
    rc.nbest = 2;
    Ranker r = Ranker::Create(c, rc, 1);
    auto ranked = RankerOutputs(c, r, ProjectedGoldLu());
    for (size_t i = 0; i < c.size(); ++i) {
      auto nbest = c[i].NBestTokens();
      CHECK(std::find(nbest.begin(), nbest.end(), slm_out[i].tokens) != nbest.end());
      CHECK(std::find(nbest.begin(), nbest.end(), ranked[i].tokens) != nbest.end());
    }
  }

  TEST_CASE("wcn outputs carry column tags of the aligned width") {
    const Corpus c = Fixture();
    WcnModelConfig cfg;
    cfg.nbest = 2;
    cfg.embedding = 4;
    cfg.hidden = 4;
    cfg.attention_heads = 2;
    WcnModel m = WcnModel::Create(c, cfg, 2);
    auto outs = WcnOutputs(c, m);
    for (size_t i = 0; i < c.size(); ++i) {
      REQUIRE(outs[i].columns.has_value());
      CHECK(outs[i].columns->predicted.size() == outs[i].columns->gold.size());
      CHECK(outs[i].tags.size() == outs[i].tokens.size());
    }
    CHECK(BuildReport("w", "J", outs, c).ter_space == "columns");
    LuFunction lu = ProjectedGoldLu();
    auto cascaded = WcnOutputs(c, m, &lu);
    CHECK_FALSE(cascaded[0].columns.has_value());
    CHECK(BuildReport("w", "C", cascaded, c).da_acc == 1.0);
    CHECK(WcnWerKind(m) == "reconstructed");
  }
}

TEST_SUITE("dstc2") {
  TEST_CASE("turn conversion") {
    json log = AsrTurn("what kind of food would you like",
                       {{"cheap thai food", -0.2}, {"cheap tie food", -1.5}});
    json label = LabelTurn(3, "Cheap Thai food",
                           {{{"act", "inform"}, {"slots", Slots({{"food", "thai"}})}},
                            {{"act", "inform"}, {"slots", Slots({{"pricerange", "cheap"}})}},
                            {{"act", "inform"}, {"slots", Slots({{"area", "dontcare"}})}},
                            {{"act", "inform"}, {"slots", Slots({{"area", "north"}})}}});
    Dstc2Stats stats;
    Utterance u = ConvertDstc2Turn(log, label, "voip-1", &stats);
    CHECK(u.id == "voip-1:3");
    CHECK(u.transcript == Words("cheap thai food"));
    REQUIRE(u.nbest.size() == 2);
    CHECK(u.nbest[1].tokens == Words("cheap tie food"));
    CHECK(u.nbest[0].score == -0.2);
    CHECK(u.dialogue_act == "inform");
    CHECK(u.slots == std::vector<SlotSpan>{{"pricerange", 0, 1}, {"food", 1, 2}});
    CHECK(u.context.size() == 1);
    CHECK(stats.unplaced_values == 1);  // "north"
    CHECK(stats.turns == 1);
  }

  TEST_CASE("requests combine the slot into the act") {
    json label = LabelTurn(0, "what is the phone number",
                           {{{"act", "request"}, {"slots", Slots({{"slot", "phone"}})}}});
    Utterance u = ConvertDstc2Turn(AsrTurn("", {{"what is the phone number", 0.0}}), label, "s");
    CHECK(u.dialogue_act == "request_phone");
    CHECK(u.slots.empty());
    CHECK(u.context.empty());
  }

  TEST_CASE("repeated values take successive free runs") {
    json label = LabelTurn(0, "north or north",
                           {{{"act", "inform"}, {"slots", Slots({{"area", "north"}})}},
                            {{"act", "inform"}, {"slots", Slots({{"area", "north"}})}}});
    Utterance u = ConvertDstc2Turn(AsrTurn("", {{"north", 0.0}}), label, "s");
    CHECK(u.slots == std::vector<SlotSpan>{{"area", 0, 1}, {"area", 2, 3}});
  }

  TEST_CASE("dialogue directories and flists") {
    auto root = std::filesystem::temp_directory_path() / "wcnslu_dstc2_fixture";
    std::filesystem::remove_all(root);
    std::filesystem::create_directories(root / "d1");
    std::filesystem::create_directories(root / "d2");
    WriteJson(root / "d1" / "log.json",
              {{"turns", {AsrTurn("hello", {{"cheap food", 0.0}}), AsrTurn("", {{"noise", 0.0}})}}});
    WriteJson(root / "d1" / "label.json",
              {{"session-id", "d1"},
               {"turns", {LabelTurn(0, "cheap food",
                                    {{{"act", "inform"}, {"slots", Slots({{"pricerange", "cheap"}})}}}),
                          LabelTurn(1, "noise", json::array())}}});
    WriteJson(root / "d2" / "log.json", {{"turns", {AsrTurn("", {{"bye", 0.0}})}}});
    WriteJson(root / "d2" / "label.json",
              {{"turns", {LabelTurn(0, "bye", {{{"act", "bye"}, {"slots", json::array()}}})}}});
    std::ofstream(root / "list.flist") << "d1\n\nd2\n";

    Dstc2Stats stats;
    Corpus c = ReadDstc2(root, root / "list.flist", &stats);
    CHECK(stats.dialogues == 2);
    CHECK(stats.turns == 3);
    REQUIRE(c.size() == 3);
    CHECK(c[0].id == "d1:0");
    CHECK(c[2].id == "d2:0");
    CHECK(c[1].dialogue_act.empty());
    CHECK(FilterUtterances(c).size() == 2);

    WriteJson(root / "d2" / "label.json", {{"turns", json::array()}});
    CHECK_THROWS_AS(ReadDstc2(root, root / "list.flist"), DataError);
    CHECK_THROWS_AS(ReadDstc2(root, root / "missing.flist"), DataError);
    std::filesystem::remove_all(root);
  }
}
