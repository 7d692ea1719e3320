// tests/unit/crf_test.cc

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

#include "../common/crf_oracle.h"
#include "doctest.h"
#include "wcnslu/corpus.h"

using namespace wcnslu;
using namespace wcnslu::testing;

TEST_SUITE("crf") {
  TEST_CASE("forward and viterbi agree with enumeration") {
    Rng rng(11, "crf-unit");
    for (int i = 0; i < 100; ++i) {
      CrfInstance inst = RandomCrfInstance(rng);
      Enumeration e = Enumerate(inst.emissions, inst.crf);
      double log_z = CrfLogPartition(inst.emissions, inst.crf);
      ViterbiPath best = CrfViterbi(inst.emissions, inst.crf);
      CHECK(log_z == doctest::Approx(e.log_partition).epsilon(1e-12));
      CHECK(best.score == doctest::Approx(e.best_score).epsilon(1e-12));
      CHECK(best.tags == e.best_tags);
      CHECK(best.score == doctest::Approx(CrfPathScore(inst.emissions, inst.crf, best.tags)));
      CHECK(best.score <= log_z + 1e-12);
    }
  }

  TEST_CASE("hand-computed two-step instance") {
    // K = 2, all transition/start/stop scores zero: Z = sum over 4 paths.
    nn::Tensor em(2, 2);
    em(0, 0) = 1.0;
    em(1, 1) = 2.0;
    CrfParams crf{nn::Tensor(2, 2), {0, 0}, {0, 0}};
    double expected = std::log(std::exp(1.0) + std::exp(3.0) + std::exp(0.0) + std::exp(2.0));
    CHECK(CrfLogPartition(em, crf) == doctest::Approx(expected).epsilon(1e-14));
    ViterbiPath v = CrfViterbi(em, crf);
    CHECK(v.tags == std::vector<int>{0, 1});
    CHECK(v.score == doctest::Approx(3.0));
  }

  TEST_CASE("ties resolve to the lowest tag index") {
    nn::Tensor em(3, 3);
    CrfParams crf{nn::Tensor(3, 3), {0, 0, 0}, {0, 0, 0}};
    CHECK(CrfViterbi(em, crf).tags == std::vector<int>{0, 0, 0});
  }

  TEST_CASE("negative log-likelihood is non-negative and matches the oracle") {
    Rng rng(12, "crf-nll");
    for (int i = 0; i < 50; ++i) {
      CrfInstance inst = RandomCrfInstance(rng);
      const size_t T = inst.emissions.rows(), K = inst.emissions.cols();
      std::vector<int> gold;
      for (size_t t = 0; t < T; ++t) gold.push_back(static_cast<int>(rng.Index(K)));
      nn::Graph g;
      nn::Var nll = CrfNegLogLikelihood(
          g, g.Constant(inst.emissions), g.Constant(inst.crf.transitions),
          g.Constant(nn::Tensor({K}, inst.crf.start)), g.Constant(nn::Tensor({K}, inst.crf.stop)),
          gold);
      double expected = Enumerate(inst.emissions, inst.crf).log_partition -
                        CrfPathScore(inst.emissions, inst.crf, gold);
      CHECK(g.scalar(nll) >= -1e-12);  // zero up to rounding when one path dominates
      CHECK(g.scalar(nll) == doctest::Approx(expected).epsilon(1e-10));
    }
  }

  TEST_CASE("viterbi output is valid IOB after repair") {
    std::vector<std::string> labels = IobInventory({"area", "food"});
    Rng rng(13, "crf-iob");
    for (int i = 0; i < 50; ++i) {
      const size_t K = labels.size(), T = 1 + rng.Index(6);
      nn::Tensor em(T, K);
      for (double& v : em.values()) v = rng.Uniform(-2, 2);
      CrfParams crf{nn::Tensor(K, K), std::vector<double>(K), std::vector<double>(K)};
      Tags tags;
      for (int id : CrfViterbi(em, crf).tags) tags.push_back(labels[id]);
      tags = RepairIob(tags);
      for (size_t t = 0; t < T; ++t) {
        if (tags[t].rfind("I-", 0) != 0) continue;
        REQUIRE(t > 0);
        CHECK(tags[t - 1].substr(2) == tags[t].substr(2));
        CHECK(tags[t - 1] != "O");
      }
    }
  }
}
