// tests/common/cli_runner.h

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

#ifndef WCNSLU_TESTS_CLI_RUNNER_H_
#define WCNSLU_TESTS_CLI_RUNNER_H_

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace wcnslu::testing {

// Runs the CLI with output discarded (or appended to log) and returns its
// exit status, or -1 when it did not exit normally.
inline int RunCli(const std::string& cli, const std::string& args,
                  const std::string& log = "/dev/null", const std::string& cwd = "") {
  std::string cmd = "'" + cli + "' " + args + " >>'" + log + "' 2>&1";
  if (!cwd.empty()) cmd = "cd '" + cwd + "' && " + cmd;
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Relative paths of regular files under root, sorted.
inline std::vector<std::string> ListFiles(const std::filesystem::path& root) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out.push_back(std::filesystem::relative(e.path(), root).string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Names of files whose bytes differ between two trees; a file missing on
// one side counts as differing.
inline std::vector<std::string> DifferingFiles(const std::filesystem::path& a,
                                               const std::filesystem::path& b) {
  std::vector<std::string> out;
  auto fa = ListFiles(a), fb = ListFiles(b);
  for (const auto& f : fa) {
    if (!std::filesystem::exists(b / f) || ReadFile(a / f) != ReadFile(b / f)) out.push_back(f);
  }
  for (const auto& f : fb) {
    if (!std::filesystem::exists(a / f)) out.push_back(f);
  }
  return out;
}

}  // namespace wcnslu::testing

#endif  // WCNSLU_TESTS_CLI_RUNNER_H_
