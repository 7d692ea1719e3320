// tools/wcnslu_main.cc

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

// Command-line entry point. Every subcommand takes --seed, --config and
// --out; --out names the directory receiving the outputs and a
// <command>.config.json echo of the resolved settings. Settings resolve as
// flags over the config file over built-in defaults.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wcnslu/align.h"
#include "wcnslu/corpus.h"
#include "wcnslu/dstc2.h"
#include "wcnslu/error.h"
#include "wcnslu/metrics.h"
#include "wcnslu/random.h"
#include "wcnslu/ranker.h"
#include "wcnslu/slm.h"
#include "wcnslu/synth.h"
#include "wcnslu/systems.h"
#include "wcnslu/tagger.h"
#include "wcnslu/wcn_model.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wcnslu;

namespace {

// Options shared by all subcommands plus per-command flag storage.
struct Common {
  uint64_t seed = 0;
  std::string config_path;
  std::string out;
  json file;  // parsed --config, or {}
  std::string echo_dir;  // where <command>.config.json goes; defaults to out

  CLI::App* app = nullptr;
  bool Given(const std::string& flag) const {
    const CLI::Option* opt = app->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  }
};

void AddCommon(CLI::App* sub, Common& c) {
  c.app = sub;
  sub->add_option("--seed", c.seed, "Top-level random seed");
  sub->add_option("--config", c.config_path, "JSON run configuration");
  sub->add_option("--out", c.out, "Output directory");
}

json LoadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

void WriteJson(const fs::path& path, const json& j) { WriteText(path, j.dump(2) + "\n"); }

void Prepare(Common& c, bool needs_seed) {
  if (!c.config_path.empty()) c.file = LoadJson(c.config_path);
  if (!c.Given("--seed") && c.file.contains("seed")) c.seed = c.file["seed"].get<uint64_t>();
  if (needs_seed && !c.Given("--seed") && !c.file.contains("seed")) {
    throw CLI::ValidationError("--seed", "a seed is required (flag or config file)");
  }
  if (c.out.empty()) c.out = c.file.value("out", std::string("."));
  if (fs::path(c.out).extension() == ".jsonl") {
    // A single output file (synth only); the echo goes beside it.
    c.echo_dir = fs::path(c.out).parent_path().string();
    if (c.echo_dir.empty()) c.echo_dir = ".";
  } else {
    c.echo_dir = c.out;
  }
  fs::create_directories(c.echo_dir);
}

json Section(const Common& c, const std::string& name) {
  return c.file.contains(name) ? c.file[name] : json::object();
}

// Flag value, else data.<key> from the config file, else empty.
std::string DataPath(const Common& c, const std::string& flag, const std::string& value,
                     const std::string& key) {
  if (c.Given(flag)) return value;
  json data = Section(c, "data");
  return data.value(key, std::string());
}

Corpus LoadCorpus(const std::string& path, const std::string& what) {
  if (path.empty()) throw DataError("no " + what + " corpus given");
  if (!fs::exists(path)) throw DataError(what + " corpus " + path + " does not exist");
  return ParseCorpus(fs::path(path));
}

void Echo(const Common& c, const std::string& command, json resolved) {
  resolved["command"] = command;
  resolved["seed"] = c.seed;
  WriteJson(fs::path(c.echo_dir) / (command + ".config.json"), resolved);
}

void WriteJsonLines(const fs::path& path, const std::vector<json>& rows) {
  std::string text;
  for (const auto& r : rows) text += r.dump() + "\n";
  WriteText(path, text);
}

// ---- synth ---------------------------------------------------------------

struct SynthFlags {
  size_t count = 2000, train = 2000, dev = 500, test = 500, nbest = 10;
  double substitution = 0.25, deletion = 0.05, insertion = 0.05, score_noise = 2.0;
};

void RunSynth(Common& c, const SynthFlags& f) {
  Prepare(c, true);
  SynthConfig config = SynthConfig::FromJson(Section(c, "synth"));
  if (c.Given("--nbest")) config.nbest_size = f.nbest;
  if (c.Given("--substitution")) config.substitution = f.substitution;
  if (c.Given("--deletion")) config.deletion = f.deletion;
  if (c.Given("--insertion")) config.insertion = f.insertion;
  if (c.Given("--score-noise")) config.score_noise = f.score_noise;
  config.Validate();

  json splits = Section(c, "splits");
  json echo = {{"synth", config.ToJson()}};
  const bool single_file = fs::path(c.out).extension() == ".jsonl";
  std::vector<std::pair<std::string, size_t>> plan;
  if (single_file || c.Given("--count")) {
    plan.push_back({"corpus", c.Given("--count") ? f.count : config.utterance_count});
  } else {
    plan.push_back({"train", c.Given("--train") ? f.train : splits.value("train", f.train)});
    plan.push_back({"dev", c.Given("--dev") ? f.dev : splits.value("dev", f.dev)});
    plan.push_back({"test", c.Given("--test") ? f.test : splits.value("test", f.test)});
  }
  for (const auto& [name, n] : plan) {
    SynthConfig split = config;
    split.utterance_count = n;
    split.id_prefix = name == "corpus" ? config.id_prefix : name;
    uint64_t seed = name == "corpus" ? c.seed : DeriveSeed(c.seed, "data." + name);
    Corpus corpus = GenerateSynthetic(split, seed);
    WriteCorpus(corpus, single_file ? fs::path(c.out) : fs::path(c.out) / (name + ".jsonl"));
    echo["splits"][name] = n;
    std::cout << name << ": " << corpus.size() << " utterances\n";
  }
  Echo(c, "synth", echo);
}

// ---- ingest --------------------------------------------------------------

struct IngestFlags {
  std::string input, dstc2_root, flist, name = "corpus";
  bool no_filter = false;
};

void RunIngest(Common& c, const IngestFlags& f) {
  Prepare(c, false);
  Corpus raw;
  json echo = {{"filter", !f.no_filter}, {"name", f.name}};
  if (!f.dstc2_root.empty()) {
    if (f.flist.empty()) throw CLI::ValidationError("--flist", "required with --dstc2-root");
    Dstc2Stats stats;
    raw = ReadDstc2(f.dstc2_root, f.flist, &stats);
    echo["dstc2_root"] = f.dstc2_root;
    echo["flist"] = f.flist;
    std::cout << "dialogues: " << stats.dialogues << "\nturns: " << stats.turns
              << "\nunplaced slot values: " << stats.unplaced_values << "\n";
  } else if (!f.input.empty()) {
    raw = LoadCorpus(f.input, "input");
    echo["input"] = f.input;
  } else {
    throw CLI::ValidationError("--in", "give --in or --dstc2-root");
  }
  Corpus kept = f.no_filter ? raw : FilterUtterances(raw);
  WriteCorpus(kept, fs::path(c.out) / (f.name + ".jsonl"));
  std::cout << "read: " << raw.size() << "\nkept: " << kept.size()
            << "\nacts: " << kept.act_inventory().size() << "\n";
  Echo(c, "ingest", echo);
}

// ---- align ---------------------------------------------------------------

void RunAlign(Common& c, const std::string& data_flag, size_t nbest) {
  Prepare(c, false);
  std::string path = DataPath(c, "--data", data_flag, "train");
  Corpus corpus = LoadCorpus(path, "input");
  std::vector<json> rows;
  for (const auto& utt : corpus.utterances()) {
    std::vector<Tokens> hyps = utt.NBestTokens();
    if (hyps.empty()) continue;
    if (hyps.size() > nbest) hyps.resize(nbest);
    ConfusionNetwork cn = BuildConfusionNetwork(hyps);
    json row = {{"id", utt.id}, {"network", NetworkToJson(cn)}};
    if (!utt.transcript.empty()) {
      TranscriptAlignment a = AlignTranscript(cn, utt.transcript);
      TrainingTargets t =
          ProjectTrainingTargets(a, ToIob(utt.transcript, utt.slots), utt.dialogue_act);
      row["aligned_network"] = NetworkToJson(a.network);
      row["targets"] = {{"correction_word", t.correction_word},
                        {"bin_index", t.bin_index},
                        {"iob_tag", t.iob_tag},
                        {"act", t.act}};
    }
    rows.push_back(std::move(row));
  }
  WriteJsonLines(fs::path(c.out) / "networks.jsonl", rows);
  std::cout << "aligned: " << rows.size() << "\n";
  Echo(c, "align", {{"data", path}, {"nbest", nbest}});
}

// ---- training ------------------------------------------------------------

struct TrainFlags {
  std::string train, dev;
  int epochs = 0;
  double learning_rate = 0;
  // slm
  int order = 3;
  double discount = 0.75;
  long min_count = 2;
  // wcn
  std::string head = "pointer";
  size_t attention_heads = 4;
  std::string name;
};

std::pair<Corpus, Corpus> TrainData(const Common& c, const TrainFlags& f, bool dev_required) {
  Corpus train = LoadCorpus(DataPath(c, "--train", f.train, "train"), "training");
  std::string dev_path = DataPath(c, "--dev", f.dev, "dev");
  Corpus dev;
  if (!dev_path.empty() || dev_required) dev = LoadCorpus(dev_path, "dev");
  return {std::move(train), std::move(dev)};
}

json DataEcho(const Common& c, const TrainFlags& f) {
  return {{"train", DataPath(c, "--train", f.train, "train")},
          {"dev", DataPath(c, "--dev", f.dev, "dev")}};
}

void RunTrainSlm(Common& c, const TrainFlags& f) {
  Prepare(c, false);
  json section = Section(c, "slm");
  NGramModel::Options options;
  options.order = c.Given("--order") ? f.order : section.value("order", options.order);
  options.discount = c.Given("--discount") ? f.discount : section.value("discount", options.discount);
  options.min_count =
      c.Given("--min-count") ? f.min_count : section.value("min_count", options.min_count);
  Corpus train = LoadCorpus(DataPath(c, "--train", f.train, "train"), "training");
  std::vector<Tokens> sentences;
  for (const auto& utt : train.utterances()) sentences.push_back(utt.transcript);
  NGramModel model = NGramModel::Train(sentences, options);
  std::string name = f.name.empty() ? "slm" : f.name;
  model.Save(fs::path(c.out) / (name + ".json"));
  json echo = {{"data", DataEcho(c, f)},
               {"slm", {{"order", options.order},
                        {"discount", options.discount},
                        {"min_count", options.min_count}}}};
  Echo(c, "train-slm", echo);
}

template <typename Config>
void ApplyTrainingFlags(const Common& c, const TrainFlags& f, Config& config) {
  if (c.Given("--epochs")) config.epochs = f.epochs;
  if (c.Given("--lr")) config.learning_rate = f.learning_rate;
}

void WriteHistory(const Common& c, const std::string& name, const nn::TrainHistory& h) {
  json j = h.ToJson();
  j.erase("seconds");  // wall time would break byte-identical reruns
  WriteJson(fs::path(c.out) / (name + ".history.json"), j);
  std::cerr << name << ": best epoch " << h.best_epoch << ", " << h.seconds << " s\n";
}

void RunTrainTagger(Common& c, const TrainFlags& f) {
  Prepare(c, true);
  TaggerConfig config = TaggerConfig::FromJson(Section(c, "tagger"));
  ApplyTrainingFlags(c, f, config);
  auto [train, dev] = TrainData(c, f, false);
  nn::TrainHistory history;
  Tagger model = Tagger::Train(train, dev, config, DeriveSeed(c.seed, "tagger"), &history);
  std::string name = f.name.empty() ? "tagger" : f.name;
  model.Save(fs::path(c.out) / (name + ".ckpt"));
  WriteHistory(c, name, history);
  Echo(c, "train-tagger", {{"data", DataEcho(c, f)}, {"tagger", config.ToJson()}});
}

void RunTrainRanker(Common& c, const TrainFlags& f) {
  Prepare(c, true);
  RankerConfig config = RankerConfig::FromJson(Section(c, "ranker"));
  ApplyTrainingFlags(c, f, config);
  auto [train, dev] = TrainData(c, f, false);
  nn::TrainHistory history;
  Ranker model = Ranker::Train(train, dev, config, DeriveSeed(c.seed, "ranker"), &history);
  std::string name = f.name.empty() ? "ranker" : f.name;
  model.Save(fs::path(c.out) / (name + ".ckpt"));
  WriteHistory(c, name, history);
  Echo(c, "train-ranker", {{"data", DataEcho(c, f)}, {"ranker", config.ToJson()}});
}

void RunTrainWcn(Common& c, const TrainFlags& f) {
  Prepare(c, true);
  WcnModelConfig config = WcnModelConfig::FromJson(Section(c, "wcn"));
  ApplyTrainingFlags(c, f, config);
  if (c.Given("--head")) config.head = ParseCorrectionHead(f.head);
  if (c.Given("--attention-heads")) config.attention_heads = f.attention_heads;
  config.Validate();
  auto [train, dev] = TrainData(c, f, false);
  nn::TrainHistory history;
  WcnModel model = WcnModel::Train(train, dev, config, DeriveSeed(c.seed, "wcn"), &history);
  std::string name = f.name.empty() ? "wcn" : f.name;
  model.Save(fs::path(c.out) / (name + ".ckpt"));
  WriteHistory(c, name, history);
  Echo(c, "train-wcn", {{"data", DataEcho(c, f)}, {"wcn", config.ToJson()}});
}

// ---- rerank / infer ------------------------------------------------------

struct ModelFlags {
  std::string data, slm, ranker, model, tagger;
  std::vector<std::string> systems;
  bool cascade = false;
  std::string name;
  std::string in;
};

void RunRerank(Common& c, const ModelFlags& f) {
  Prepare(c, false);
  std::string path = DataPath(c, "--data", f.data, "test");
  Corpus corpus = LoadCorpus(path, "input");
  if (f.slm.empty() == f.ranker.empty()) {
    throw CLI::ValidationError("--slm/--ranker", "give exactly one of --slm or --ranker");
  }
  std::optional<NGramModel> slm;
  std::optional<Ranker> ranker;
  if (!f.slm.empty()) slm = NGramModel::Load(f.slm);
  if (!f.ranker.empty()) ranker = Ranker::Load(f.ranker);
  std::vector<json> rows;
  for (const auto& utt : corpus.utterances()) {
    std::vector<Tokens> nbest = utt.NBestTokens();
    if (nbest.empty()) throw DataError(utt.id + ": empty n-best list");
    json row = {{"id", utt.id}};
    int index = 0;
    if (slm) {
      RerankResult r = RerankByPerplexity(*slm, nbest);
      index = r.index;
      row["perplexities"] = r.perplexities;
    } else {
      RankResult r = ranker->Rank(nbest);
      index = r.index;
      row["probabilities"] = r.probabilities;
    }
    row["index"] = index;
    row["selected"] = JoinTokens(nbest[index]);
    rows.push_back(std::move(row));
  }
  WriteJsonLines(fs::path(c.out) / "rerank.jsonl", rows);
  Echo(c, "rerank", {{"data", path}, {"slm", f.slm}, {"ranker", f.ranker}});
}

void RunInfer(Common& c, const ModelFlags& f) {
  Prepare(c, false);
  std::string path = DataPath(c, "--data", f.data, "test");
  Corpus corpus = LoadCorpus(path, "input");
  if (f.model.empty()) throw CLI::ValidationError("--model", "a wcn checkpoint is required");
  WcnModel model = WcnModel::Load(f.model);
  std::vector<json> rows;
  for (const auto& utt : corpus.utterances()) {
    if (utt.nbest.empty()) throw DataError(utt.id + ": empty n-best list");
    WcnPrediction p = model.Infer(utt.NBestTokens());
    rows.push_back({{"id", utt.id},
                    {"corrected", JoinTokens(p.corrected)},
                    {"tags", p.tags},
                    {"act", p.act},
                    {"indices", p.indices}});
  }
  WriteJsonLines(fs::path(c.out) / "infer.jsonl", rows);
  Echo(c, "infer", {{"data", path}, {"model", f.model}});
}

// ---- evaluate / report ---------------------------------------------------

std::string Slug(std::string s) {
  for (char& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '-';
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return s;
}

std::string WcnSystemName(const WcnModel& m) {
  std::string name = m.config().head == CorrectionHead::kWordGen ? "WCN WordGen" : "WCN Pointer";
  return name + (m.config().attention_heads > 0 ? " Multihead Attention" : " No Attention");
}

void RunEvaluate(Common& c, const ModelFlags& f) {
  Prepare(c, false);
  std::string path = DataPath(c, "--data", f.data, "test");
  Corpus corpus = LoadCorpus(path, "test");
  std::optional<Tagger> tagger;
  if (!f.tagger.empty()) tagger = Tagger::Load(f.tagger);
  LuFunction lu = tagger ? TaggerLu(*tagger) : ProjectedGoldLu();
  std::string lu_note = tagger ? "tagger" : "projected-gold";

  std::vector<EvaluationReport> reports;
  for (const auto& system : f.systems) {
    if (system == "onebest") {
      reports.push_back(BuildReport("1-best", "C", OneBestOutputs(corpus, lu), corpus));
    } else if (system == "oracle") {
      reports.push_back(BuildReport("Oracle", "C", OracleOutputs(corpus, lu), corpus));
    } else if (system == "truth") {
      reports.push_back(BuildReport("Ground Truth", "C", TruthOutputs(corpus, lu), corpus));
    } else if (system == "slm") {
      if (f.slm.empty()) throw CLI::ValidationError("--slm", "needed for the slm system");
      NGramModel slm = NGramModel::Load(f.slm);
      reports.push_back(BuildReport("SLM Rerank", "C", SlmOutputs(corpus, slm, lu), corpus));
    } else if (system == "ranker") {
      if (f.ranker.empty()) throw CLI::ValidationError("--ranker", "needed for the ranker system");
      Ranker ranker = Ranker::Load(f.ranker);
      reports.push_back(
          BuildReport("Hier-CNN-RNN Ranker", "C", RankerOutputs(corpus, ranker, lu), corpus));
    } else if (system == "wcn") {
      if (f.model.empty()) throw CLI::ValidationError("--model", "needed for the wcn system");
      WcnModel model = WcnModel::Load(f.model);
      std::string name = f.name.empty() ? WcnSystemName(model) : f.name;
      reports.push_back(BuildReport(name, "J", WcnOutputs(corpus, model), corpus, WcnWerKind(model)));
      if (f.cascade) {
        reports.push_back(BuildReport(name, "C", WcnOutputs(corpus, model, &lu), corpus,
                                      WcnWerKind(model)));
      }
    } else {
      throw CLI::ValidationError("--system", "unknown system '" + system + "'");
    }
  }
  for (const auto& r : reports) {
    WriteJson(fs::path(c.out) / ("report-" + Slug(r.system_name) + "-" + Slug(r.mode) + ".json"),
              r.ToJson());
  }
  std::cout << RenderTable(reports);
  Echo(c, "evaluate", {{"data", path},
                       {"systems", f.systems},
                       {"lu", lu_note},
                       {"slm", f.slm},
                       {"ranker", f.ranker},
                       {"model", f.model},
                       {"tagger", f.tagger},
                       {"cascade", f.cascade}});
}

// Rows keep the usual comparison order: baselines, rerankers, then joint
// models; unknown names follow alphabetically.
int SystemRank(const EvaluationReport& r) {
  static const std::vector<std::string> order = {"1-best", "Oracle", "Ground Truth",
                                                 "SLM Rerank", "Hier-CNN-RNN Ranker"};
  auto it = std::find(order.begin(), order.end(), r.system_name);
  return it == order.end() ? static_cast<int>(order.size()) : static_cast<int>(it - order.begin());
}

void RunReport(Common& c, const ModelFlags& f) {
  Prepare(c, false);
  fs::path dir = f.in.empty() ? fs::path(c.out) : fs::path(f.in);
  if (!fs::is_directory(dir)) throw DataError(dir.string() + " is not a directory");
  std::vector<EvaluationReport> reports;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("report-", 0) == 0 && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  for (const auto& file : files) reports.push_back(EvaluationReport::FromJson(LoadJson(file)));
  if (reports.empty()) throw DataError("no report-*.json files in " + dir.string());
  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tuple(SystemRank(a), a.system_name, a.mode) <
           std::tuple(SystemRank(b), b.system_name, b.mode);
  });
  std::string table = RenderTable(reports);
  json all = json::array();
  for (const auto& r : reports) all.push_back(r.ToJson());
  WriteText(fs::path(c.out) / "table.txt", table);
  WriteJson(fs::path(c.out) / "table.json", all);
  std::cout << table;
  Echo(c, "report", {{"in", dir.string()}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confusion-network correction and understanding toolkit"};
  app.require_subcommand(1);

  Common common;
  SynthFlags synth;
  IngestFlags ingest;
  TrainFlags train;
  ModelFlags models;
  std::string align_data;
  size_t align_nbest = 10;

  auto* s = app.add_subcommand("synth", "Generate seeded synthetic corpora");
  s->add_option("--count", synth.count, "Write one corpus.jsonl of this many utterances");
  s->add_option("--train", synth.train, "Training utterances");
  s->add_option("--dev", synth.dev, "Development utterances");
  s->add_option("--test", synth.test, "Test utterances");
  s->add_option("--nbest", synth.nbest, "Hypotheses per utterance");
  s->add_option("--substitution", synth.substitution, "Per-token substitution probability");
  s->add_option("--deletion", synth.deletion, "Per-token deletion probability");
  s->add_option("--insertion", synth.insertion, "Per-gap insertion probability");
  s->add_option("--score-noise", synth.score_noise, "Std. dev. of recognizer score noise");

  auto* in = app.add_subcommand("ingest", "Normalize and filter a corpus, or convert DSTC2");
  in->add_option("--in", ingest.input, "JSON-lines corpus");
  in->add_option("--dstc2-root", ingest.dstc2_root, "Raw DSTC2 data directory");
  in->add_option("--flist", ingest.flist, "DSTC2 .flist of dialogue directories");
  in->add_option("--name", ingest.name, "Output file stem");
  in->add_flag("--no-filter", ingest.no_filter, "Keep utterances the filter would drop");

  auto* al = app.add_subcommand("align", "Build confusion networks and training targets");
  al->add_option("--data", align_data, "Corpus to align");
  al->add_option("--nbest", align_nbest, "Rows kept per network");

  auto* ts = app.add_subcommand("train-slm", "Train the n-gram reranking model");
  auto* tt = app.add_subcommand("train-tagger", "Train the Bi-LSTM-CRF tagger");
  auto* tr = app.add_subcommand("train-ranker", "Train the CNN-RNN n-best ranker");
  auto* tw = app.add_subcommand("train-wcn", "Train the joint confusion-network model");
  for (auto* sub : {ts, tt, tr, tw}) {
    sub->add_option("--train", train.train, "Training corpus");
    sub->add_option("--name", train.name, "Output file stem");
  }
  for (auto* sub : {tt, tr, tw}) {
    sub->add_option("--dev", train.dev, "Development corpus for model selection");
    sub->add_option("--epochs", train.epochs, "Training epochs");
    sub->add_option("--lr", train.learning_rate, "Adam learning rate");
  }
  ts->add_option("--order", train.order, "N-gram order");
  ts->add_option("--discount", train.discount, "Absolute discount");
  ts->add_option("--min-count", train.min_count, "Words rarer than this become <unk>");
  tw->add_option("--head", train.head, "Correction head: pointer, wordgen or none");
  tw->add_option("--attention-heads", train.attention_heads, "Self-attention heads (0 = none)");

  auto* rr = app.add_subcommand("rerank", "Select hypotheses with an SLM or ranker");
  auto* inf = app.add_subcommand("infer", "Run the joint model");
  auto* ev = app.add_subcommand("evaluate", "Score systems and write reports");
  auto* rp = app.add_subcommand("report", "Render a table from report files");
  for (auto* sub : {rr, inf, ev}) sub->add_option("--data", models.data, "Corpus to process");
  for (auto* sub : {rr, ev}) {
    sub->add_option("--slm", models.slm, "SLM model file");
    sub->add_option("--ranker", models.ranker, "Ranker checkpoint");
  }
  for (auto* sub : {inf, ev}) sub->add_option("--model", models.model, "WCN checkpoint");
  ev->add_option("--system", models.systems,
                 "onebest, oracle, truth, slm, ranker, wcn (repeatable)")
      ->required();
  ev->add_option("--tagger", models.tagger, "Tagger checkpoint; projected gold LU otherwise");
  ev->add_flag("--cascade", models.cascade, "Also re-tag WCN output with the tagger");
  ev->add_option("--name", models.name, "Row name for the wcn system");
  rp->add_option("--in", models.in, "Directory holding report-*.json");

  std::vector<CLI::App*> subs = {s, in, al, ts, tt, tr, tw, rr, inf, ev, rp};
  for (auto* sub : subs) {
    // Only one subcommand parses, so they can share the storage.
    AddCommon(sub, common);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (auto* sub : subs) {
    if (sub->parsed()) common.app = sub;
  }
  try {
    if (s->parsed()) RunSynth(common, synth);
    if (in->parsed()) RunIngest(common, ingest);
    if (al->parsed()) RunAlign(common, align_data, align_nbest);
    if (ts->parsed()) RunTrainSlm(common, train);
    if (tt->parsed()) RunTrainTagger(common, train);
    if (tr->parsed()) RunTrainRanker(common, train);
    if (tw->parsed()) RunTrainWcn(common, train);
    if (rr->parsed()) RunRerank(common, models);
    if (inf->parsed()) RunInfer(common, models);
    if (ev->parsed()) RunEvaluate(common, models);
    if (rp->parsed()) RunReport(common, models);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
