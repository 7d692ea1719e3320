// tests/unit/corpus_test.cc

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

#include <sstream>

#include "doctest.h"
#include "test_util.h"
#include "wcnslu/corpus.h"
#include "wcnslu/error.h"
#include "wcnslu/metrics.h"
#include "wcnslu/synth.h"
#include "wcnslu/vocab.h"

using namespace wcnslu;
using wcnslu::testing::Words;

namespace {

const char* kLine =
    R"({"id": "u1", "context": [{"speaker": "system", "text": "How may I help"}],)"
    R"( "nbest": [{"text": "cheap thai food", "score": -1.5}, {"text": "", "score": null}],)"
    R"( "transcript": "Cheap  Thai Food", "dialogue_act": "inform",)"
    R"( "slots": [{"type": "food", "start": 1, "end": 2}, {"type": "pricerange", "start": 0, "end": 1}]})";

std::string ErrorOf(const std::string& line) {
  try {
    ParseUtterance(line, 7);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("parse normalizes text and keeps field values") {
    Utterance u = ParseUtterance(kLine, 1);
    CHECK(u.id == "u1");
    CHECK(u.transcript == Tokens{"cheap", "thai", "food"});
    REQUIRE(u.nbest.size() == 2);
    CHECK(u.nbest[0].score == doctest::Approx(-1.5));
    CHECK(u.nbest[1].tokens.empty());
    CHECK_FALSE(u.nbest[1].score.has_value());
    REQUIRE(u.context.size() == 1);
    CHECK(u.context[0].speaker == Speaker::kSystem);
    CHECK(u.context[0].tokens == Words("how may i help"));
    // Spans come back ordered by position.
    CHECK(u.slots[0].type == "pricerange");
    CHECK(u.slots[1].type == "food");
  }

  TEST_CASE("two valid lines give two utterances in file order") {
    std::string second = kLine;
    second.replace(second.find("\"u1\""), 4, "\"u2\"");
    std::istringstream in(std::string(kLine) + "\n" + second + "\n");
    Corpus c = ParseCorpus(in);
    REQUIRE(c.size() == 2);
    CHECK(c[0].id == "u1");
    CHECK(c[1].id == "u2");
  }

  TEST_CASE("errors name the line and the field") {
    std::string missing = kLine;
    missing.replace(missing.find("\"transcript\""), 12, "\"transcriptx\"");
    std::string err = ErrorOf(missing);
    CHECK(err.find("line 7") != std::string::npos);
    CHECK(err.find("transcript") != std::string::npos);

    std::string reserved = kLine;
    reserved.replace(reserved.find("Cheap"), 5, "<unk>");
    CHECK(ErrorOf(reserved).find("transcript") != std::string::npos);

    std::string bad_span = kLine;
    bad_span.replace(bad_span.find("\"end\": 2"), 8, "\"end\": 9");
    CHECK(ErrorOf(bad_span).find("slots") != std::string::npos);

    CHECK(ErrorOf("{not json").find("line 7") != std::string::npos);
  }

  TEST_CASE("duplicate ids are rejected") {
    std::istringstream in(std::string(kLine) + "\n" + kLine + "\n");
    CHECK_THROWS_AS(ParseCorpus(in), DataError);
  }

  TEST_CASE("write then parse is the identity") {
    Corpus c = GenerateSynthetic(SynthConfig::FromJson({{"utterance_count", 40}}), 3);
    std::ostringstream out;
    WriteCorpus(c, out);
    std::istringstream in(out.str());
    Corpus back = ParseCorpus(in);
    REQUIRE(back.size() == c.size());
    for (size_t i = 0; i < c.size(); ++i) CHECK(back[i] == c[i]);
  }

  TEST_CASE("vocabulary is the multiset union of transcript and hypothesis tokens") {
    Corpus c({testing::MakeUtterance("a", {"x y", "x"}, "y z", "ack")});
    std::map<std::string, long> expected{{"x", 2}, {"y", 2}, {"z", 1}};
    CHECK(c.vocabulary() == expected);
  }

  TEST_CASE("filtering drops noise transcripts and empty n-best or acts") {
    using testing::MakeUtterance;
    Corpus c({MakeUtterance("1", {"noise"}, "noise", "null"),
              MakeUtterance("2", {}, "thai food", "inform"),
              MakeUtterance("3", {"thai food"}, "thai food", ""),
              MakeUtterance("4", {"hello and welcome"}, "Hello and  welcome", "hello"),
              MakeUtterance("5", std::vector<std::string>(10, "thai food"), "thai food", "inform")});
    Corpus kept = FilterUtterances(c);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].id == "5");
    CHECK(FilterUtterances(kept).utterances() == kept.utterances());  // idempotent
    for (const auto& t : {"noise", "unintelligible", "silence", "system", "inaudible"}) {
      CHECK(ShouldFilter(MakeUtterance("x", {"a"}, t, "ack")));
    }
  }

  TEST_CASE("combined act labels") {
    CHECK(CombineActLabel("request", {"pricerange"}) == "request_pricerange");
    CHECK(CombineActLabel("ack", {}) == "ack");
    CHECK(CombineActLabel("request", {"food"}) == "request_food");
    CHECK(CombineActLabel("request", {"food", "area"}) == "request_area_food");
  }

  TEST_CASE("iob conversion") {
    CHECK(ToIob(Words("cheap thai food"), {{"food", 1, 2}}) == Tags{"O", "B-food", "O"});
    CHECK(ToIob(Words("north part"), {{"area", 0, 2}}) == Tags{"B-area", "I-area"});
    CHECK(ToIob(Words("hello"), {}) == Tags{"O"});
    CHECK_THROWS_AS(ToIob(Words("a b c"), {{"food", 0, 2}, {"area", 1, 3}}), DataError);
    CHECK_THROWS_AS(ToIob(Words("a b"), {{"food", 1, 1}}), DataError);
  }

  TEST_CASE("iob round trip on random valid spans") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
      size_t len = 1 + rng.Index(10);
      Tokens t(len, "w");
      std::vector<SlotSpan> spans;
      size_t pos = 0;
      while (pos < len) {
        size_t skip = rng.Index(3);
        pos += skip;
        if (pos >= len) break;
        size_t width = 1 + rng.Index(std::min<size_t>(3, len - pos));
        spans.push_back({rng.Bernoulli(0.5) ? "food" : "area", static_cast<int>(pos),
                         static_cast<int>(pos + width)});
        pos += width;
      }
      CHECK(SpansFromIob(ToIob(t, spans)) == spans);
    }
  }

  TEST_CASE("repair rewrites orphan inside tags") {
    CHECK(RepairIob({"I-food", "I-food", "O", "I-area"}) ==
          Tags{"B-food", "I-food", "O", "B-area"});
    CHECK(RepairIob({"B-food", "I-area"}) == Tags{"B-food", "B-area"});
    CHECK(IobInventory({"food", "area"}) ==
          std::vector<std::string>{"O", "B-area", "I-area", "B-food", "I-food"});
  }

  TEST_CASE("vocab ids are fixed for reserved tokens and sorted otherwise") {
    Vocab v = Vocab::Build({{"b", 3}, {"a", 1}, {"c", 2}}, 2);
    CHECK(v.Token(0) == "<eps>");
    CHECK(v.Token(1) == "<unk>");
    CHECK(v.Token(2) == "<eos>");
    CHECK(v.Token(3) == "b");
    CHECK(v.Token(4) == "c");
    CHECK(v.Id("a") == Vocab::kUnkId);
    CHECK(Vocab::FromJson(v.ToJson()).tokens() == v.tokens());
  }
}

TEST_SUITE("synth") {
  TEST_CASE("generation is deterministic per seed") {
    SynthConfig cfg = SynthConfig::FromJson({{"utterance_count", 100}});
    std::ostringstream a, b, c;
    WriteCorpus(GenerateSynthetic(cfg, 7), a);
    WriteCorpus(GenerateSynthetic(cfg, 7), b);
    WriteCorpus(GenerateSynthetic(cfg, 8), c);
    CHECK(a.str() == b.str());
    CHECK(a.str() != c.str());
  }

  TEST_CASE("noiseless channel copies the transcript") {
    SynthConfig cfg = SynthConfig::FromJson(
        {{"utterance_count", 50}, {"substitution", 0.0}, {"deletion", 0.0}, {"insertion", 0.0}});
    Corpus c = GenerateSynthetic(cfg, 1);
    std::vector<TokenPair> oracle;
    for (const auto& u : c.utterances()) {
      REQUIRE(u.nbest.size() == cfg.nbest_size);
      for (const auto& h : u.nbest) CHECK(h.tokens == u.transcript);
      oracle.push_back({u.transcript, u.nbest[OracleIndex(u.NBestTokens(), u.transcript)].tokens});
    }
    CHECK(CorpusWer(oracle) == 0.0);
  }

  TEST_CASE("noisy channel: 1-best WER in (0,1) and above the oracle") {
    SynthConfig cfg = SynthConfig::FromJson({{"utterance_count", 2000}, {"substitution", 0.3}});
    Corpus c = GenerateSynthetic(cfg, 5);
    std::vector<TokenPair> first, oracle;
    for (const auto& u : c.utterances()) {
      first.push_back({u.transcript, u.OneBest()});
      oracle.push_back({u.transcript, u.nbest[OracleIndex(u.NBestTokens(), u.transcript)].tokens});
    }
    double w1 = CorpusWer(first), wo = CorpusWer(oracle);
    CHECK(w1 > 0.0);
    CHECK(w1 < 1.0);
    CHECK(wo < w1);
  }

  TEST_CASE("labels are valid and reserved tokens never appear") {
    Corpus c = GenerateSynthetic(SynthConfig::FromJson({{"utterance_count", 300}}), 2);
    for (const auto& u : c.utterances()) {
      CHECK_FALSE(u.dialogue_act.empty());
      CHECK_NOTHROW(ValidateSpans(u.slots, u.transcript.size()));
      for (const auto& h : u.nbest) {
        for (const auto& t : h.tokens) CHECK_FALSE(IsReservedToken(t));
      }
    }
    CHECK(c.act_inventory().count("request_pricerange") == 1);
    CHECK(c.slot_inventory() == std::set<std::string>{"area", "food", "pricerange"});
  }

  TEST_CASE("invalid probabilities are rejected") {
    CHECK_THROWS_AS(SynthConfig::FromJson({{"substitution", 1.5}}).Validate(), DataError);
    CHECK_THROWS_AS(SynthConfig::FromJson({{"deletion", -0.1}}).Validate(), DataError);
  }
}
