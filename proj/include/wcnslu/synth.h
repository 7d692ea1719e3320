// include/wcnslu/synth.h

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

#ifndef WCNSLU_SYNTH_H_
#define WCNSLU_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcnslu/corpus.h"

namespace wcnslu {

// One utterance pattern. Tokens of the form {type} are slot placeholders
// filled from SynthConfig::slot_values; requested_slot, when set, is
// combined into the act label (request + pricerange -> request_pricerange).
struct SynthTemplate {
  std::string act;
  std::string requested_slot;
  std::string text;
};

struct SynthConfig {
  size_t utterance_count = 2000;
  size_t nbest_size = 10;
  // Noise channel, per transcript token: delete, else substitute, else keep.
  // Insertions are drawn independently at each of the length+1 gaps.
  double substitution = 0.25;
  double deletion = 0.05;
  double insertion = 0.05;
  // Standard deviation of the recognizer-score perturbation added to the
  // channel log-probability before ranking the samples.
  double score_noise = 2.0;
  std::string id_prefix = "syn";

  std::vector<SynthTemplate> templates;
  std::map<std::string, std::vector<std::string>> slot_values;
  // Acoustic confusions per word. Words without an entry are substituted by
  // a uniformly drawn grammar word.
  std::map<std::string, std::vector<std::string>> confusions;
  std::vector<std::string> fillers;  // insertion alphabet
  std::vector<std::string> system_prompts;

  // Restaurant-domain grammar with three slot types.
  static SynthConfig Default();
  void Validate() const;

  nlohmann::json ToJson() const;
  // Keys absent from j keep the values of base.
  static SynthConfig FromJson(const nlohmann::json& j,
                              const SynthConfig& base = Default());
};

// Deterministic for a fixed (config, seed).
Corpus GenerateSynthetic(const SynthConfig& config, uint64_t seed);

}  // namespace wcnslu

#endif  // WCNSLU_SYNTH_H_
