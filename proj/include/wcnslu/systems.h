// include/wcnslu/systems.h

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

#ifndef WCNSLU_SYSTEMS_H_
#define WCNSLU_SYSTEMS_H_

#include <functional>
#include <string>
#include <vector>

#include "wcnslu/corpus.h"
#include "wcnslu/metrics.h"
#include "wcnslu/ranker.h"
#include "wcnslu/slm.h"
#include "wcnslu/tagger.h"
#include "wcnslu/wcn_model.h"

namespace wcnslu {

// Understanding applied to a selected token sequence. The gold utterance is
// passed for the projected-gold backend only.
using LuFunction = std::function<TagResult(const Tokens& tokens, const Utterance& gold)>;

// Runs the tagger; an empty sequence is tagged as a lone <eps> so that an
// act is still predicted.
LuFunction TaggerLu(const Tagger& tagger);
// Gold tags carried over the edit alignment onto the tokens (matched and
// substituted words keep their transcript tag, inserted words get O) and the
// gold act. Measures selection quality without a trained tagger.
LuFunction ProjectedGoldLu();

using Selector = std::function<size_t(const Utterance& utt)>;

// Picks one hypothesis per utterance and applies lu to it.
std::vector<SystemOutput> SelectionOutputs(const Corpus& corpus, const Selector& select,
                                           const LuFunction& lu);
std::vector<SystemOutput> OneBestOutputs(const Corpus& corpus, const LuFunction& lu);
std::vector<SystemOutput> OracleOutputs(const Corpus& corpus, const LuFunction& lu);
// The transcript itself as the selected sequence.
std::vector<SystemOutput> TruthOutputs(const Corpus& corpus, const LuFunction& lu);
std::vector<SystemOutput> SlmOutputs(const Corpus& corpus, const NGramModel& slm,
                                     const LuFunction& lu);
std::vector<SystemOutput> RankerOutputs(const Corpus& corpus, const Ranker& ranker,
                                        const LuFunction& lu);

// Joint outputs carry column-space tags. With a cascade function the
// corrected text is re-tagged and the joint LU heads are ignored.
std::vector<SystemOutput> WcnOutputs(const Corpus& corpus, const WcnModel& model,
                                     const LuFunction* cascade = nullptr);

// "reconstructed" for the pointer head, "generated" for word generation.
std::string WcnWerKind(const WcnModel& model);

}  // namespace wcnslu

#endif  // WCNSLU_SYSTEMS_H_
