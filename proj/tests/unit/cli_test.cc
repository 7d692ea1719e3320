// tests/unit/cli_test.cc

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

#include "../common/cli_runner.h"
#include "doctest.h"
#include "json.hpp"

using namespace wcnslu::testing;
namespace fs = std::filesystem;

namespace {

const std::string kCli = WCNSLU_CLI_PATH;

fs::path Scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "wcnslu_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string Q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 1") {
    CHECK(RunCli(kCli, "") == 1);
    CHECK(RunCli(kCli, "frobnicate") == 1);
    CHECK(RunCli(kCli, "synth --out " + Q(Scratch("noseed"))) == 1);
    CHECK(RunCli(kCli, "synth --seed x") == 1);
    CHECK(RunCli(kCli, "--help") == 0);
  }

  TEST_CASE("data errors exit with 2") {
    fs::path dir = Scratch("data_errors");
    CHECK(RunCli(kCli, "evaluate --system onebest --data " + Q(dir / "missing.jsonl") +
                           " --out " + Q(dir)) == 2);
    std::ofstream(dir / "bad.jsonl") << "{\"id\": 1}\n";
    CHECK(RunCli(kCli, "ingest --in " + Q(dir / "bad.jsonl") + " --out " + Q(dir)) == 2);
    std::ofstream(dir / "bad.json") << "{";
    CHECK(RunCli(kCli, "synth --config " + Q(dir / "bad.json") + " --out " + Q(dir)) == 2);
    CHECK(RunCli(kCli, "report --in " + Q(dir) + " --out " + Q(dir)) == 2);
  }

  TEST_CASE("synth is deterministic and echoes its config") {
    fs::path a = Scratch("synth_a"), b = Scratch("synth_b"), c = Scratch("synth_c");
    const std::string args = " --train 30 --dev 10 --test 10 --out ";
    REQUIRE(RunCli(kCli, "synth --seed 4" + args + Q(a)) == 0);
    REQUIRE(RunCli(kCli, "synth --seed 4" + args + Q(b)) == 0);
    REQUIRE(RunCli(kCli, "synth --seed 5" + args + Q(c)) == 0);
    CHECK(DifferingFiles(a, b).empty());
    CHECK(ReadFile(a / "train.jsonl") != ReadFile(c / "train.jsonl"));
    auto echo = nlohmann::json::parse(ReadFile(a / "synth.config.json"));
    CHECK(echo["seed"] == 4);
    CHECK(echo["command"] == "synth");
  }

  TEST_CASE("config file values apply unless a flag overrides them") {
    fs::path dir = Scratch("config");
    std::ofstream(dir / "run.json") << R"({"seed": 9, "splits": {"train": 3, "dev": 2, "test": 2}})";
    REQUIRE(RunCli(kCli, "synth --config " + Q(dir / "run.json") + " --test 4 --out " + Q(dir)) == 0);
    auto count = [&](const std::string& f) {
      std::string text = ReadFile(dir / f);
      return std::count(text.begin(), text.end(), '\n');
    };
    CHECK(count("train.jsonl") == 3);
    CHECK(count("test.jsonl") == 4);
    CHECK(nlohmann::json::parse(ReadFile(dir / "synth.config.json"))["seed"] == 9);
  }

  TEST_CASE("a perfect channel gives an all-zero error report") {
    fs::path dir = Scratch("perfect");
    REQUIRE(RunCli(kCli, "synth --seed 2 --count 25 --substitution 0 --deletion 0 --insertion 0 "
                         "--out " + Q(dir / "clean.jsonl")) == 0);
    REQUIRE(RunCli(kCli, "evaluate --data " + Q(dir / "clean.jsonl") +
                             " --system onebest --system oracle --system truth --out " +
                             Q(dir / "eval")) == 0);
    REQUIRE(RunCli(kCli, "report --in " + Q(dir / "eval") + " --out " + Q(dir / "eval")) == 0);
    auto table = nlohmann::json::parse(ReadFile(dir / "eval" / "table.json"));
    REQUIRE(table.size() == 3);
    for (const auto& r : table) {
      CHECK(r["wer"] == 0.0);
      CHECK(r["ser"] == 0.0);
      CHECK(r["ter"] == 0.0);
      CHECK(r["fer"] == 0.0);
      CHECK(r["slot_f1"] == 1.0);
      CHECK(r["da_acc"] == 1.0);
      CHECK(r["utterances"] == 25);
    }
    CHECK(ReadFile(dir / "eval" / "table.txt").find("Ground Truth (C)") != std::string::npos);
  }

  TEST_CASE("inputs are left untouched") {
    fs::path dir = Scratch("untouched");
    REQUIRE(RunCli(kCli, "synth --seed 1 --count 15 --out " + Q(dir / "c.jsonl")) == 0);
    std::string before = ReadFile(dir / "c.jsonl");
    REQUIRE(RunCli(kCli, "ingest --in " + Q(dir / "c.jsonl") + " --out " + Q(dir / "i")) == 0);
    REQUIRE(RunCli(kCli, "align --data " + Q(dir / "c.jsonl") + " --out " + Q(dir / "a")) == 0);
    CHECK(ReadFile(dir / "c.jsonl") == before);
  }
}
