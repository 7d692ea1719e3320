// include/wcnslu/nn/checkpoint.h

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

#ifndef WCNSLU_NN_CHECKPOINT_H_
#define WCNSLU_NN_CHECKPOINT_H_

#include <filesystem>
#include <iosfwd>

#include "json.hpp"
#include "wcnslu/nn/params.h"

namespace wcnslu::nn {

// Checkpoint layout: one line of JSON manifest
//   {"format": "wcnslu-checkpoint", "version": 1, "meta": {...},
//    "params": [{"name": ..., "shape": [...]}, ...]}
// followed by every parameter's values as 64-bit little-endian IEEE
// doubles, in manifest order. Only values are stored.
void WriteCheckpoint(std::ostream& out, const ParameterStore& store, const nlohmann::json& meta);
void SaveCheckpoint(const std::filesystem::path& path, const ParameterStore& store,
                    const nlohmann::json& meta);

struct Checkpoint {
  ParameterStore store;
  nlohmann::json meta;
};
Checkpoint ReadCheckpoint(std::istream& in);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace wcnslu::nn

#endif  // WCNSLU_NN_CHECKPOINT_H_
