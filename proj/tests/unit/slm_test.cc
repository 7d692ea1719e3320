// tests/unit/slm_test.cc

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

#include <cmath>

#include "doctest.h"
#include "test_util.h"
#include "wcnslu/error.h"
#include "wcnslu/slm.h"

using namespace wcnslu;
using wcnslu::testing::RandomTokens;
using wcnslu::testing::Words;

namespace {

NGramModel::Options Opts(int order, long min_count = 2) {
  NGramModel::Options o;
  o.order = order;
  o.min_count = min_count;
  return o;
}

double MassOver(const NGramModel& m, const Tokens& ctx) {
  double total = 0.0;
  for (const auto& w : m.vocabulary()) total += m.Prob(ctx, w);
  return total;
}

}  // namespace

TEST_SUITE("slm") {
  TEST_CASE("counts and unknown mapping") {
    NGramModel m = NGramModel::Train({Words("a b"), Words("a b")}, Opts(2));
    CHECK(m.Count({"a"}, "b") == 2);
    NGramModel u = NGramModel::Train({Words("a b zzz"), Words("a b")}, Opts(2));
    CHECK(u.vocabulary().count("zzz") == 0);
    CHECK(u.Count({"b"}, "<unk>") == 1);
    CHECK(u.Prob({}, "zzz") == u.Prob({}, "<unk>"));
    CHECK(u.vocabulary().count("<eos>") == 1);
  }

  TEST_CASE("invalid options") {
    CHECK_THROWS_AS(NGramModel::Train({Words("a")}, Opts(0)), DataError);
    NGramModel::Options o = Opts(2);
    o.discount = 1.0;
    CHECK_THROWS_AS(NGramModel::Train({Words("a")}, o), DataError);
    CHECK_THROWS_AS(NGramModel::Train({}, Opts(2)), DataError);
  }

  TEST_CASE("hand-counted bigram preference") {
    NGramModel m = NGramModel::Train({Words("a b a b")}, Opts(2, 1));
    CHECK(m.Prob({"a"}, "b") > m.Prob({"a"}, "a"));
  }

  TEST_CASE("normalization over random contexts for orders 1 to 5") {
    Rng rng(41);
    const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f", "g"};
    for (int order = 1; order <= 5; ++order) {
      std::vector<Tokens> corpus;
      for (int i = 0; i < 60; ++i) corpus.push_back(RandomTokens(rng, 8, words, 1));
      NGramModel m = NGramModel::Train(corpus, Opts(order));
      for (int trial = 0; trial < 100; ++trial) {
        Tokens ctx = RandomTokens(rng, order + 1, {"a", "b", "c", "<s>", "q"});
        CHECK(std::abs(MassOver(m, ctx) - 1.0) < 1e-9);
      }
    }
  }

  TEST_CASE("unseen context falls back to its longest observed suffix") {
    NGramModel m = NGramModel::Train({Words("a b c"), Words("b c a"), Words("c a b")}, Opts(3, 1));
    for (const auto& w : m.vocabulary()) {
      CHECK(m.Prob({"zzz", "c"}, w) == doctest::Approx(m.Prob({"c"}, w)).epsilon(1e-12));
      CHECK(m.Prob({"q", "r"}, w) == doctest::Approx(m.Prob({}, w)).epsilon(1e-12));
    }
  }

  TEST_CASE("uniform unigram perplexity equals the vocabulary size") {
    // a, <unk> (u1, u2) and <eos> each occur twice.
    NGramModel m = NGramModel::Train({Words("a u1"), Words("a u2")}, Opts(1));
    REQUIRE(m.vocabulary().size() == 3);
    for (const auto& s : {Words("a"), Words("x y z"), Tokens{}}) {
      CHECK(std::abs(m.Perplexity(s) - 3.0) < 1e-9);
    }
  }

  TEST_CASE("perplexity counts the end marker") {
    NGramModel m = NGramModel::Train({Words("a b c"), Words("a c")}, Opts(2, 1));
    CHECK(m.Perplexity({}) == doctest::Approx(1.0 / m.Prob({"<s>"}, "<eos>")));
    NGramModel fit = NGramModel::Train(std::vector<Tokens>(20, Words("i want cheap thai food")),
                                       Opts(3, 1));
    CHECK(fit.Perplexity(Words("i want cheap thai food")) <
          fit.Perplexity(Words("food thai want cheap i")));
  }

  TEST_CASE("training order does not matter") {
    std::vector<Tokens> corpus = {Words("a b c"), Words("b c"), Words("c a a b")};
    NGramModel m1 = NGramModel::Train(corpus, Opts(3, 1));
    std::reverse(corpus.begin(), corpus.end());
    NGramModel m2 = NGramModel::Train(corpus, Opts(3, 1));
    CHECK(m1.ToJson() == m2.ToJson());
    CHECK(m1.Perplexity(Words("a b")) == m2.Perplexity(Words("a b")));
  }

  TEST_CASE("reranking") {
    NGramModel fit = NGramModel::Train(std::vector<Tokens>(20, Words("i want thai food")),
                                       Opts(3, 1));
    RerankResult r = RerankByPerplexity(fit, {Words("i want tie food"), Words("i want thai food")});
    CHECK(r.index == 1);
    CHECK(r.perplexities.size() == 2);
    CHECK(RerankByPerplexity(fit, {Words("a"), Words("a"), Words("a")}).index == 0);
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Tokens> nbest;
      for (int i = 0; i < 5; ++i) nbest.push_back(RandomTokens(rng, 5, {"i", "want", "thai", "x"}));
      RerankResult rr = RerankByPerplexity(fit, nbest);
      CHECK(rr.perplexities[rr.index] <= rr.perplexities[0]);
    }
  }

  TEST_CASE("json round trip is exact") {
    NGramModel m = NGramModel::Train({Words("a b c"), Words("a c"), Words("b b")}, Opts(3, 1));
    NGramModel back = NGramModel::FromJson(m.ToJson());
    CHECK(back.ToJson() == m.ToJson());
    CHECK(back.Perplexity(Words("a b")) == m.Perplexity(Words("a b")));
  }
}
