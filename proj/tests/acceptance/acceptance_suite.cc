// tests/acceptance/acceptance_suite.cc

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

// Acceptance runner: prints one "criterion N: PASS|FAIL ..." line per
// requested criterion and exits non-zero when any of them fails.

#include <cstdlib>
#include <iostream>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "criteria.h"

namespace fs = std::filesystem;
using namespace wcnslu::acceptance;

namespace {

void Print(int criterion, const Outcome& o, bool& all_pass) {
  std::cout << "criterion " << criterion << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
            << std::endl;
  all_pass = all_pass && o.pass;
}

Outcome Guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("error: ") + e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wcnslu acceptance criteria"};
  std::vector<int> criteria;
  SuiteOptions options;
  std::string work = (fs::temp_directory_path() / "wcnslu_acceptance").string();
  app.add_option("--criterion", criteria, "Criterion to run (repeatable; default all)")
      ->check(CLI::Range(1, 10));
  app.add_option("--cli", options.cli, "Path of the wcnslu executable");
  app.add_option("--work", work, "Scratch directory for pipeline runs");
  CLI11_PARSE(app, argc, argv);
  // Pipelines run inside their own directories.
  options.work = fs::absolute(work);
  if (!options.cli.empty()) options.cli = fs::absolute(options.cli).string();
  if (const char* dstc2 = std::getenv("WCNSLU_DSTC2"); dstc2 && *dstc2) options.dstc2 = dstc2;

  std::set<int> wanted(criteria.begin(), criteria.end());
  if (wanted.empty()) wanted = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (int c : {7, 8, 9, 10}) {
    if (wanted.count(c) && options.cli.empty()) {
      std::cerr << "criterion " << c << " needs --cli\n";
      return 1;
    }
  }

  bool all_pass = true;
  const std::map<int, std::function<Outcome()>> simple = {
      {1, AlignmentRoundTrip}, {2, LevenshteinOracle},   {3, SlmNormalization},
      {4, CrfEquivalence},     {5, GradientVerification}, {6, MetricFixtures},
      {9, [&] { return Determinism(options); }},
      {10, [&] { return DataGateway(options); }}};
  std::optional<SyntheticRunOutcomes> synthetic;
  for (int c : wanted) {
    if (c == 7 || c == 8) {
      if (!synthetic) {
        try {
          synthetic = SyntheticTableAnalog(options);
        } catch (const std::exception& e) {
          Outcome failed{false, std::string("error: ") + e.what()};
          synthetic = SyntheticRunOutcomes{failed, failed};
        }
      }
      Print(c, c == 7 ? synthetic->directional : synthetic->capability, all_pass);
    } else {
      Print(c, Guarded(simple.at(c)), all_pass);
    }
  }
  return all_pass ? 0 : 1;
}
