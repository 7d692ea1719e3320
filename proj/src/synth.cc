// src/synth.cc

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

#include "wcnslu/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>

#include "wcnslu/error.h"
#include "wcnslu/random.h"

namespace wcnslu {

using nlohmann::json;

SynthConfig SynthConfig::Default() {
  SynthConfig c;
  c.slot_values = {
      {"food",
       {"thai", "chinese", "indian", "italian", "french", "korean", "british",
        "spanish", "turkish", "japanese", "vietnamese", "mexican", "portuguese",
        "lebanese", "seafood", "gastropub", "mediterranean", "international",
        "modern european", "north american", "asian oriental"}},
      {"pricerange", {"cheap", "moderate", "expensive", "moderately priced"}},
      {"area", {"north", "south", "east", "west", "centre"}},
  };
  c.templates = {
      {"inform", "", "{food} food"},
      {"inform", "", "i want {food} food"},
      {"inform", "", "im looking for {food} food"},
      {"inform", "", "{pricerange} restaurant"},
      {"inform", "", "i want a {pricerange} restaurant"},
      {"inform", "", "{area} part of town"},
      {"inform", "", "in the {area}"},
      {"inform", "", "i want a {pricerange} restaurant in the {area} part of town"},
      {"inform", "", "{pricerange} {food} food"},
      {"inform", "", "im looking for a {pricerange} restaurant serving {food} food"},
      {"inform", "", "{food} food in the {area} of town"},
      {"inform", "", "a restaurant in the {area} that serves {food} food"},
      {"request", "addr", "whats the address"},
      {"request", "addr", "can i have the address please"},
      {"request", "phone", "what is the phone number"},
      {"request", "phone", "phone number please"},
      {"request", "postcode", "what is the post code"},
      {"request", "pricerange", "whats the price range"},
      {"request", "pricerange", "what is the price range of the restaurant"},
      {"request", "food", "what type of food do they serve"},
      {"request", "area", "what part of town is it"},
      {"request", "area", "what area is that in"},
      {"confirm", "", "is it {food} food"},
      {"confirm", "", "is that in the {area}"},
      {"confirm", "", "is it {pricerange}"},
      {"deny", "", "i dont want {food} food"},
      {"deny", "", "not {area}"},
      {"affirm", "", "yes"},
      {"affirm", "", "yes please"},
      {"affirm", "", "yeah right"},
      {"negate", "", "no"},
      {"negate", "", "no not that"},
      {"thankyou", "", "thank you"},
      {"thankyou", "", "thanks a lot"},
      {"bye", "", "good bye"},
      {"bye", "", "thank you good bye"},
      {"hello", "", "hello"},
      {"hello", "", "hi there"},
      {"reqalts", "", "is there anything else"},
      {"reqalts", "", "how about another one"},
      {"repeat", "", "can you repeat that"},
      {"ack", "", "okay"},
      {"restart", "", "start over"},
      {"reqmore", "", "can you tell me more"},
  };
  c.confusions = {
      {"thai", {"tie", "high", "type"}},
      {"chinese", {"genies", "cheney"}},
      {"indian", {"in", "indiana"}},
      {"italian", {"italy", "battalion"}},
      {"french", {"friend", "fresh"}},
      {"korean", {"career", "korea"}},
      {"british", {"brush", "bridges"}},
      {"spanish", {"spinach", "span"}},
      {"turkish", {"turkey", "work"}},
      {"japanese", {"japan", "chinese"}},
      {"vietnamese", {"vietnam", "these"}},
      {"mexican", {"mexico", "medicine"}},
      {"portuguese", {"portugal", "geese"}},
      {"lebanese", {"lebanon", "leaves"}},
      {"seafood", {"see", "c"}},
      {"gastropub", {"gastro", "pub"}},
      {"mediterranean", {"medium", "terrain"}},
      {"international", {"nation", "internal"}},
      {"modern", {"moderate", "madam"}},
      {"european", {"euro", "pian"}},
      {"american", {"america", "can"}},
      {"asian", {"asia", "agent"}},
      {"oriental", {"orient", "rental"}},
      {"cheap", {"chip", "jeep", "cheaper"}},
      {"moderate", {"modern", "model"}},
      {"moderately", {"moderate", "modest"}},
      {"priced", {"price", "prize"}},
      {"expensive", {"extensive", "expense"}},
      {"north", {"nor", "noise"}},
      {"south", {"mouth", "self"}},
      {"east", {"yeast", "is"}},
      {"west", {"what", "best"}},
      {"centre", {"center", "enter"}},
      {"food", {"foot", "fool"}},
      {"want", {"wont", "what"}},
      {"restaurant", {"restaurants", "rest"}},
      {"part", {"parts", "art"}},
      {"town", {"down", "tone"}},
      {"address", {"dress", "addresses"}},
      {"phone", {"fine", "foam"}},
      {"number", {"numbers", "lumber"}},
      {"price", {"prize", "rice"}},
      {"range", {"change", "arrange"}},
      {"yes", {"yeah", "less"}},
      {"no", {"now", "know"}},
      {"thank", {"think", "tank"}},
      {"bye", {"by", "buy"}},
  };
  c.fillers = {"uh", "um", "the", "a", "i", "and", "it", "is", "oh"};
  c.system_prompts = {
      "hello welcome to the cambridge restaurant system how may i help you",
      "what kind of food would you like",
      "what part of town do you have in mind",
      "would you like something in the cheap moderate or expensive price range",
      "is there anything else i can help you with",
  };
  return c;
}

void SynthConfig::Validate() const {
  auto check = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DataError(std::string("synth: probability '") + name +
                      "' outside [0,1]: " + std::to_string(p));
    }
  };
  check(substitution, "substitution");
  check(deletion, "deletion");
  check(insertion, "insertion");
  if (substitution + deletion > 1.0) {
    throw DataError("synth: substitution + deletion exceeds 1");
  }
  if (!(score_noise >= 0.0)) throw DataError("synth: score_noise must be >= 0");
  if (nbest_size == 0) throw DataError("synth: nbest_size must be >= 1");
  if (templates.empty()) throw DataError("synth: no templates");
  if (insertion > 0.0 && fillers.empty()) throw DataError("synth: no fillers");
  for (const auto& t : templates) {
    if (t.act.empty()) throw DataError("synth: template with empty act");
    for (const auto& tok : Tokenize(t.text)) {
      if (tok.size() > 2 && tok.front() == '{' && tok.back() == '}') {
        std::string type = tok.substr(1, tok.size() - 2);
        auto it = slot_values.find(type);
        if (it == slot_values.end() || it->second.empty()) {
          throw DataError("synth: no values for slot '" + type + "'");
        }
      }
    }
  }
}

json SynthConfig::ToJson() const {
  json templ = json::array();
  for (const auto& t : templates) {
    templ.push_back({{"act", t.act}, {"requested_slot", t.requested_slot}, {"text", t.text}});
  }
  return {{"utterance_count", utterance_count},
          {"nbest_size", nbest_size},
          {"substitution", substitution},
          {"deletion", deletion},
          {"insertion", insertion},
          {"score_noise", score_noise},
          {"id_prefix", id_prefix},
          {"templates", templ},
          {"slot_values", slot_values},
          {"confusions", confusions},
          {"fillers", fillers},
          {"system_prompts", system_prompts}};
}

SynthConfig SynthConfig::FromJson(const json& j, const SynthConfig& base) {
  SynthConfig c = base;
  auto get = [&](const char* key, auto& field) {
    if (auto it = j.find(key); it != j.end()) it->get_to(field);
  };
  get("utterance_count", c.utterance_count);
  get("nbest_size", c.nbest_size);
  get("substitution", c.substitution);
  get("deletion", c.deletion);
  get("insertion", c.insertion);
  get("score_noise", c.score_noise);
  get("id_prefix", c.id_prefix);
  get("slot_values", c.slot_values);
  get("confusions", c.confusions);
  get("fillers", c.fillers);
  get("system_prompts", c.system_prompts);
  if (auto it = j.find("templates"); it != j.end()) {
    c.templates.clear();
    for (const auto& t : *it) {
      c.templates.push_back({t.at("act").get<std::string>(),
                             t.value("requested_slot", std::string()),
                             t.at("text").get<std::string>()});
    }
  }
  return c;
}

namespace {

struct Sample {
  Tokens tokens;
  double score;
  size_t order;
};

double SafeLog(double p) {
  return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

class NoiseChannel {
 public:
  explicit NoiseChannel(const SynthConfig& c) : c_(c) {
    std::set<std::string> words;
    for (const auto& t : c.templates) {
      for (const auto& tok : Tokenize(t.text)) {
        if (tok.front() != '{') words.insert(tok);
      }
    }
    for (const auto& [type, values] : c.slot_values) {
      for (const auto& v : values) {
        for (const auto& tok : Tokenize(v)) words.insert(tok);
      }
    }
    grammar_words_.assign(words.begin(), words.end());
  }

  Sample Draw(const Tokens& transcript, Rng& rng) const {
    Sample s;
    double logp = 0.0;
    const double keep = 1.0 - c_.substitution - c_.deletion;
    auto gap = [&]() {
      if (c_.insertion > 0.0 && rng.Bernoulli(c_.insertion)) {
        s.tokens.push_back(c_.fillers[rng.Index(c_.fillers.size())]);
        logp += SafeLog(c_.insertion) - std::log(static_cast<double>(c_.fillers.size()));
      } else {
        logp += SafeLog(1.0 - c_.insertion);
      }
    };
    gap();
    for (const auto& word : transcript) {
      double u = rng.Uniform();
      if (u < c_.deletion) {
        logp += SafeLog(c_.deletion);
      } else if (u < c_.deletion + c_.substitution) {
        auto [sub, alternatives] = Substitute(word, rng);
        s.tokens.push_back(sub);
        logp += SafeLog(c_.substitution) - std::log(static_cast<double>(alternatives));
      } else {
        s.tokens.push_back(word);
        logp += SafeLog(keep);
      }
      gap();
    }
    s.score = logp;
    return s;
  }

 private:
  std::pair<std::string, size_t> Substitute(const std::string& word, Rng& rng) const {
    auto it = c_.confusions.find(word);
    if (it != c_.confusions.end() && !it->second.empty()) {
      return {it->second[rng.Index(it->second.size())], it->second.size()};
    }
    size_t n = grammar_words_.size();
    if (n < 2) return {word, 1};
    for (;;) {
      const std::string& w = grammar_words_[rng.Index(n)];
      if (w != word) return {w, n - 1};
    }
  }

  const SynthConfig& c_;
  std::vector<std::string> grammar_words_;
};

}  // namespace

Corpus GenerateSynthetic(const SynthConfig& config, uint64_t seed) {
  config.Validate();
  Rng rng(seed, "synth");
  NoiseChannel channel(config);
  std::vector<Utterance> utts;
  utts.reserve(config.utterance_count);

  const int width = std::max<int>(
      5, static_cast<int>(std::to_string(config.utterance_count).size()));
  for (size_t n = 0; n < config.utterance_count; ++n) {
    const SynthTemplate& templ = config.templates[rng.Index(config.templates.size())];
    Utterance utt;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*zu", width, n);
    utt.id = config.id_prefix + "-" + buf;

    for (const auto& tok : Tokenize(templ.text)) {
      if (tok.size() > 2 && tok.front() == '{' && tok.back() == '}') {
        std::string type = tok.substr(1, tok.size() - 2);
        const auto& values = config.slot_values.at(type);
        Tokens value = Tokenize(values[rng.Index(values.size())]);
        int start = static_cast<int>(utt.transcript.size());
        utt.transcript.insert(utt.transcript.end(), value.begin(), value.end());
        utt.slots.push_back({type, start, static_cast<int>(utt.transcript.size())});
      } else {
        utt.transcript.push_back(tok);
      }
    }
    std::set<std::string> requested;
    if (!templ.requested_slot.empty()) requested.insert(templ.requested_slot);
    utt.dialogue_act = CombineActLabel(templ.act, requested);

    if (!config.system_prompts.empty()) {
      const auto& prompt = config.system_prompts[rng.Index(config.system_prompts.size())];
      utt.context.push_back({Speaker::kSystem, Tokenize(prompt)});
    }

    std::vector<Sample> samples;
    for (size_t k = 0; k < config.nbest_size; ++k) {
      Sample s = channel.Draw(utt.transcript, rng);
      s.score += config.score_noise * rng.Normal();
      s.order = k;
      samples.push_back(std::move(s));
    }
    std::stable_sort(samples.begin(), samples.end(),
                     [](const Sample& a, const Sample& b) { return a.score > b.score; });
    for (auto& s : samples) {
      Hypothesis h;
      h.tokens = std::move(s.tokens);
      if (std::isfinite(s.score)) h.score = s.score;
      utt.nbest.push_back(std::move(h));
    }
    utts.push_back(std::move(utt));
  }
  return Corpus(std::move(utts));
}

}  // namespace wcnslu
