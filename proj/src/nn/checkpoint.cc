// src/nn/checkpoint.cc

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

#include "wcnslu/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "wcnslu/error.h"

namespace wcnslu::nn {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "wcnslu-checkpoint";

void PutDouble(std::ostream& out, double v) {
  uint64_t bits = std::bit_cast<uint64_t>(v);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

double GetDouble(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw DataError("checkpoint truncated");
  }
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void WriteCheckpoint(std::ostream& out, const ParameterStore& store, const json& meta) {
  json params = json::array();
  for (const auto& [name, p] : store.entries()) {
    params.push_back({{"name", name}, {"shape", p.value.shape()}});
  }
  json manifest = {{"format", kFormat}, {"version", 1}, {"meta", meta}, {"params", params}};
  out << manifest.dump() << '\n';
  for (const auto& [name, p] : store.entries()) {
    for (double v : p.value.values()) PutDouble(out, v);
  }
}

void SaveCheckpoint(const std::filesystem::path& path, const ParameterStore& store,
                    const json& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint " + path.string());
  WriteCheckpoint(out, store, meta);
}

Checkpoint ReadCheckpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty checkpoint");
  json manifest;
  try {
    manifest = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(std::string("checkpoint manifest: ") + e.what());
  }
  if (manifest.value("format", "") != kFormat) throw DataError("not a wcnslu checkpoint");
  Checkpoint ck;
  ck.meta = manifest.value("meta", json::object());
  for (const auto& entry : manifest.at("params")) {
    auto shape = entry.at("shape").get<std::vector<size_t>>();
    Tensor t(shape);
    for (double& v : t.values()) v = GetDouble(in);
    ck.store.Add(entry.at("name").get<std::string>(), std::move(t));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw DataError("trailing bytes in checkpoint");
  return ck;
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  try {
    return ReadCheckpoint(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace wcnslu::nn
