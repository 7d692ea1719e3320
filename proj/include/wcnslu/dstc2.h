// include/wcnslu/dstc2.h

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

#ifndef WCNSLU_DSTC2_H_
#define WCNSLU_DSTC2_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcnslu/corpus.h"

namespace wcnslu {

// Converter from the raw DSTC2 release: every dialogue directory holds a
// log.json (system prompts, live ASR n-best) and a label.json
// (transcription, semantics). A .flist names one dialogue directory per
// line relative to the data root.

struct Dstc2Stats {
  size_t dialogues = 0;
  size_t turns = 0;
  // Labelled slot values with no exact token match in the transcript.
  size_t unplaced_values = 0;
};

// One user turn. The act is the first semantic act; a request naming a slot
// becomes act_slot. Slot values are located as the first free exact token
// run in the transcript; "dontcare" and unplaceable values get no span.
Utterance ConvertDstc2Turn(const nlohmann::json& log_turn, const nlohmann::json& label_turn,
                           const std::string& session_id, Dstc2Stats* stats = nullptr);
std::vector<Utterance> ReadDstc2Dialogue(const std::filesystem::path& dir,
                                         Dstc2Stats* stats = nullptr);
// Unfiltered; apply FilterUtterances for the evaluation subset.
Corpus ReadDstc2(const std::filesystem::path& root, const std::filesystem::path& flist,
                 Dstc2Stats* stats = nullptr);

}  // namespace wcnslu

#endif  // WCNSLU_DSTC2_H_
