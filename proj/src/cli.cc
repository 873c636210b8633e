/* Copyright 2026 The Spatialref Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "spatialref/cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "spatialref/annotation.h"
#include "spatialref/io.h"
#include "spatialref/lexicon.h"
#include "spatialref/metrics.h"
#include "spatialref/random.h"
#include "spatialref/referent.h"
#include "spatialref/synthetic.h"

namespace spatialref {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Bad flags or missing inputs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Files produced by a command, committed together.
class OutputSet {
 public:
  void Add(std::string name, std::string contents) {
    files_[std::move(name)] = std::move(contents);
  }

  void Commit(const std::string& dir) const {
    fs::create_directories(dir);
    std::vector<fs::path> written;
    try {
      for (const auto& [name, contents] : files_) {
        const fs::path target = fs::path(dir) / name;
        const fs::path staging = fs::path(dir) / (name + ".partial");
        {
          std::ofstream out(staging, std::ios::binary | std::ios::trunc);
          out << contents;
          if (!out) {
            fs::remove(staging);
            throw std::runtime_error("cannot write " + target.string());
          }
        }
        fs::rename(staging, target);
        written.push_back(target);
      }
    } catch (...) {
      for (const fs::path& p : written) fs::remove(p);
      throw;
    }
  }

 private:
  std::map<std::string, std::string> files_;
};

struct Inputs {
  std::vector<ScenePair> scenes;
  std::vector<DialogueDocument> documents;
  std::map<std::string, const ScenePair*> scene_by_id;

  const ScenePair& SceneFor(const DialogueDocument& doc) const {
    auto it = scene_by_id.find(doc.scene_id);
    if (it == scene_by_id.end()) {
      throw FormatError("dialogue " + doc.dialogue_id + " refers to unknown scene " +
                        doc.scene_id);
    }
    return *it->second;
  }
};

void RequirePath(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  if (!fs::exists(path)) {
    throw FormatError(std::string(flag) + " path does not exist: " + path);
  }
}

void RequireOut(const RunConfig& config) {
  if (config.out_dir.empty()) throw UsageError("--out is required");
}

Inputs LoadInputs(const RunConfig& config, bool need_scenes) {
  Inputs inputs;
  if (config.annotations.empty()) throw UsageError("--annotations is required");
  RequirePath(config.annotations.front(), "--annotations");
  inputs.documents = ReadDocuments(config.annotations.front());
  std::sort(inputs.documents.begin(), inputs.documents.end(),
            [](const DialogueDocument& a, const DialogueDocument& b) {
              return a.dialogue_id < b.dialogue_id;
            });
  if (need_scenes || !config.scenes.empty()) {
    RequirePath(config.scenes, "--scenes");
    inputs.scenes = ReadScenes(config.scenes);
    for (const ScenePair& s : inputs.scenes) {
      if (!inputs.scene_by_id.emplace(s.scene_id, &s).second) {
        throw FormatError("duplicate scene id " + s.scene_id);
      }
    }
  }
  return inputs;
}

// The documents must be lint-clean before any scoring.
void RequireValid(const Inputs& inputs) {
  for (const DialogueDocument& doc : inputs.documents) {
    const auto violations = ValidateDocument(doc, &inputs.SceneFor(doc));
    if (!violations.empty()) {
      throw FormatError("dialogue " + doc.dialogue_id + " fails validation (" +
                        violations.front().rule + " at " +
                        violations.front().location + "); run validate");
    }
  }
}

std::map<std::string, DialoguePredictions> LoadPredictions(
    const std::string& path) {
  RequirePath(path, "--predictions");
  std::map<std::string, DialoguePredictions> by_dialogue;
  for (DialoguePredictions& p : ReadPredictions(path)) {
    const std::string id = p.dialogue_id;
    if (!by_dialogue.emplace(id, std::move(p)).second) {
      throw FormatError("duplicate predictions for dialogue " + id);
    }
  }
  return by_dialogue;
}

// Decoded referents from a prediction file, keyed by markable id.
ReferentMap DecodedReferents(const DialoguePredictions& predictions) {
  ReferentMap map;
  for (const PredictionEntry& entry : predictions.predictions) {
    if (!entry.decoded) {
      throw FormatError("markable " + entry.markable_id + " of dialogue " +
                        predictions.dialogue_id +
                        " has no decoded referents; run decode first");
    }
    map[entry.markable_id] = *entry.decoded;
  }
  return map;
}

const View& SpeakerView(const DialogueDocument& doc, const ScenePair& scene,
                        const Markable& markable) {
  return scene.ViewOf(doc.SpeakerOf(markable));
}

std::vector<int> ToPositions(const View& view, const std::vector<int>& ids) {
  std::vector<int> positions;
  for (int id : ids) {
    const int p = view.IndexOf(id);
    if (p < 0) {
      throw FormatError("entity " + std::to_string(id) +
                        " is not in the speaker's view");
    }
    positions.push_back(p);
  }
  std::sort(positions.begin(), positions.end());
  return positions;
}

std::string FormatNumber(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

// ---------------------------------------------------------------------------

int Generate(const RunConfig& config, OutputSet& outputs, std::ostream& out) {
  RequireOut(config);
  if (!config.seed) throw UsageError("--seed is required for generate");
  if (config.per_relation < 1) throw UsageError("--per-relation must be >= 1");
  SyntheticOptions options;
  options.seed = *config.seed;
  options.instances_per_relation = config.per_relation;
  options.polarity =
      config.violating ? Polarity::kViolating : Polarity::kSatisfying;
  const SyntheticCorpus corpus = GenerateSyntheticCorpus(options);
  std::vector<json> scenes;
  for (const ScenePair& s : corpus.scenes) scenes.push_back(SceneToJson(s));
  std::vector<json> documents;
  for (const DialogueDocument& d : corpus.documents) {
    documents.push_back(DocumentToJson(d));
  }
  outputs.Add("scenes.jsonl", ToJsonLines(scenes));
  outputs.Add("annotations.jsonl", ToJsonLines(documents));
  out << "generated " << corpus.documents.size() << " dialogues\n";
  return kExitOk;
}

int Perturb(const RunConfig& config, OutputSet& outputs, std::ostream& out) {
  RequireOut(config);
  if (!config.seed) throw UsageError("--seed is required for perturb");
  if (!(config.flip_probability >= 0.0 && config.flip_probability <= 1.0)) {
    throw UsageError("--flip-probability must be in [0, 1]");
  }
  const Inputs inputs = LoadInputs(config, true);
  RequireValid(inputs);
  std::vector<json> lines;
  for (const DialogueDocument& doc : inputs.documents) {
    const ScenePair& scene = inputs.SceneFor(doc);
    DialoguePredictions predictions{doc.dialogue_id, {}};
    for (const Markable& m : doc.markables) {
      const auto gold = ToPositions(SpeakerView(doc, scene, m), m.referents);
      const MarkablePrediction p = PerturbGold(
          gold, config.flip_probability,
          DeriveSeed(*config.seed, doc.dialogue_id + "/" + m.id), m.id);
      predictions.predictions.push_back({m.id, p.scores, std::nullopt, std::nullopt});
    }
    lines.push_back(PredictionsToJson(predictions));
  }
  outputs.Add("predictions.jsonl", ToJsonLines(lines));
  out << "wrote scores for " << lines.size() << " dialogues\n";
  return kExitOk;
}

int Validate(const RunConfig& config, OutputSet& outputs, std::ostream& out) {
  const Inputs inputs = LoadInputs(config, false);
  std::ostringstream report;
  report << "dialogue_id,location,rule,message\n";
  int total = 0;
  std::map<std::string, int> scene_checks;
  for (const ScenePair& s : inputs.scenes) {
    for (const std::string& problem : CheckScenePair(s)) {
      report << "," << "scene " << s.scene_id << ",scene-invariant,"
             << problem << "\n";
      ++total;
    }
  }
  for (const DialogueDocument& doc : inputs.documents) {
    const ScenePair* scene = nullptr;
    if (!inputs.scene_by_id.empty()) {
      auto it = inputs.scene_by_id.find(doc.scene_id);
      if (it == inputs.scene_by_id.end()) {
        report << doc.dialogue_id << ",document,missing-scene,scene "
               << doc.scene_id << " not found\n";
        ++total;
      } else {
        scene = it->second;
      }
    }
    for (const Violation& v : ValidateDocument(doc, scene)) {
      std::string message = v.message;
      std::replace(message.begin(), message.end(), ',', ';');
      report << doc.dialogue_id << ',' << v.location << ',' << v.rule << ','
             << message << '\n';
      ++total;
    }
  }
  if (!config.out_dir.empty()) outputs.Add("validation.csv", report.str());
  out << inputs.documents.size() << " dialogues, " << total
      << " violations\n";
  if (config.out_dir.empty() && total > 0) out << report.str();
  return total == 0 ? kExitOk : kExitValidationFailed;
}

int Decode(const RunConfig& config, OutputSet& outputs, std::ostream& out) {
  RequireOut(config);
  if (config.decoder != "threshold" && config.decoder != "topk") {
    throw UsageError("--decoder must be threshold or topk");
  }
  if (config.count_source != "file" && config.count_source != "heuristic" &&
      config.count_source != "gold") {
    throw UsageError("--count-source must be file, heuristic or gold");
  }
  const Inputs inputs = LoadInputs(config, true);
  RequireValid(inputs);
  auto predictions = LoadPredictions(config.predictions);
  std::vector<json> lines;
  for (const DialogueDocument& doc : inputs.documents) {
    auto it = predictions.find(doc.dialogue_id);
    if (it == predictions.end()) continue;
    const ScenePair& scene = inputs.SceneFor(doc);
    DialoguePredictions decoded = it->second;
    std::sort(decoded.predictions.begin(), decoded.predictions.end(),
              [](const PredictionEntry& a, const PredictionEntry& b) {
                return a.markable_id < b.markable_id;
              });
    for (PredictionEntry& entry : decoded.predictions) {
      const Markable* m = doc.FindMarkable(entry.markable_id);
      if (m == nullptr) {
        throw FormatError("prediction for unknown markable " +
                          entry.markable_id + " in dialogue " +
                          doc.dialogue_id);
      }
      const View& view = SpeakerView(doc, scene, *m);
      std::vector<int> positions;
      if (config.decoder == "threshold") {
        positions = ThresholdPredict(entry.scores);
      } else {
        if (config.count_source == "heuristic") {
          entry.count = HeuristicCount(entry.scores).count;
        } else if (config.count_source == "gold") {
          entry.count = static_cast<int>(m->referents.size());
        } else if (!entry.count) {
          throw FormatError("markable " + entry.markable_id +
                            " has no count; use --count-source heuristic or gold");
        }
        positions = TopKPredict(entry.scores, *entry.count);
      }
      std::vector<int> ids;
      for (int p : positions) ids.push_back(view.entities[p].id);
      entry.decoded = ids;
    }
    lines.push_back(PredictionsToJson(decoded));
  }
  outputs.Add("decoded.jsonl", ToJsonLines(lines));
  out << "decoded " << lines.size() << " dialogues\n";
  return kExitOk;
}

int Evaluate(const RunConfig& config, OutputSet& outputs, std::ostream& out) {
  RequireOut(config);
  const Inputs inputs = LoadInputs(config, true);
  RequireValid(inputs);
  const auto predictions = LoadPredictions(config.predictions);
  std::vector<ReferentLabel> predicted;
  std::vector<ReferentLabel> gold;
  for (const DialogueDocument& doc : inputs.documents) {
    const ScenePair& scene = inputs.SceneFor(doc);
    auto it = predictions.find(doc.dialogue_id);
    const ReferentMap decoded = it == predictions.end()
                                    ? ReferentMap{}
                                    : DecodedReferents(it->second);
    for (const Markable& m : doc.markables) {
      const View& view = SpeakerView(doc, scene, m);
      const std::string key = doc.dialogue_id + "/" + m.id;
      gold.push_back({key, ToPositions(view, m.referents)});
      auto p = decoded.find(m.id);
      if (p != decoded.end()) predicted.push_back({key, ToPositions(view, p->second)});
    }
    for (const auto& [markable_id, ids] : decoded) {
      if (doc.FindMarkable(markable_id) == nullptr) {
        throw FormatError("prediction for unknown markable " + markable_id +
                          " in dialogue " + doc.dialogue_id);
      }
    }
  }
  const double accuracy = EntityAccuracy(predicted, gold);
  const double exact = ExactMatch(predicted, gold);
  std::ostringstream csv;
  csv << "metric,value\n"
      << "entity_accuracy," << FormatNumber(accuracy, 6) << "\n"
      << "exact_match," << FormatNumber(exact, 6) << "\n"
      << "markables," << gold.size() << "\n";
  outputs.Add("accuracy.csv", csv.str());
  out << csv.str();
  return kExitOk;
}

// Cases for every dialogue, from decoded predictions when given, otherwise
// from gold referents.
std::vector<CaseRecord> AllCases(const RunConfig& config, const Inputs& inputs) {
  std::map<std::string, DialoguePredictions> predictions;
  if (!config.predictions.empty()) predictions = LoadPredictions(config.predictions);
  std::vector<CaseRecord> cases;
  for (const DialogueDocument& doc : inputs.documents) {
    ReferentMap referents;
    if (config.predictions.empty()) {
      referents = GoldReferents(doc);
    } else if (auto it = predictions.find(doc.dialogue_id);
               it != predictions.end()) {
      referents = DecodedReferents(it->second);
    }
    auto dialogue_cases = CollectCases(doc, inputs.SceneFor(doc), referents);
    cases.insert(cases.end(), std::make_move_iterator(dialogue_cases.begin()),
                 std::make_move_iterator(dialogue_cases.end()));
  }
  return cases;
}

int TestRelations(const RunConfig& config, OutputSet& outputs,
                  std::ostream& out) {
  RequireOut(config);
  const auto grouping = ParseGrouping(config.group);
  if (!grouping) {
    throw UsageError("--group must be relation, category, strength or factor");
  }
  const Inputs inputs = LoadInputs(config, true);
  RequireValid(inputs);
  const std::vector<CaseRecord> cases = AllCases(config, inputs);
  const std::string csv = ToCsv(SatisfyValidTable(cases, *grouping));
  outputs.Add("relations_" + config.group + ".csv", csv);
  if (config.emit_cases) outputs.Add("cases.csv", CasesCsv(cases));
  out << csv;
  return kExitOk;
}

std::string DistributionCsv(
    Attribute attribute,
    const std::map<std::string, TermDistribution>& gold,
    const std::map<std::string, TermDistribution>& predicted) {
  std::ostringstream csv;
  csv << "term,source,bin,bin_start,bin_end,count\n";
  for (const auto& [term, dist] : gold) {
    for (const auto* source : {&gold, &predicted}) {
      auto it = source->find(term);
      std::vector<double> values;
      if (it != source->end()) values = it->second.values;
      const Histogram h = BuildHistogram(attribute, values);
      for (std::size_t b = 0; b < h.counts.size(); ++b) {
        csv << term << ',' << (source == &gold ? "gold" : "predicted") << ','
            << b << ',' << FormatNumber(b * h.bin_width(), 2) << ','
            << FormatNumber((b + 1) * h.bin_width(), 2) << ','
            << static_cast<long>(h.counts[b]) << '\n';
      }
    }
  }
  return csv.str();
}

int Analyze(const RunConfig& config, OutputSet& outputs, std::ostream& out) {
  RequireOut(config);
  const Inputs inputs = LoadInputs(config, true);
  RequireValid(inputs);
  Lexicon lexicon = Lexicon::Default();
  if (!config.lexicon.empty()) {
    RequirePath(config.lexicon, "--lexicon");
    lexicon = Lexicon::LoadWithOverrides(config.lexicon);
  }
  const std::vector<CaseRecord> cases = AllCases(config, inputs);
  outputs.Add("strength.csv", ToCsv(SatisfyValidTable(cases, Grouping::kStrength)));
  outputs.Add("factor.csv", ToCsv(SatisfyValidTable(cases, Grouping::kFactor)));
  outputs.Add("difference.csv", DifferenceCsv(AbsoluteDifferenceTable(cases)));
  if (config.emit_cases) outputs.Add("cases.csv", CasesCsv(cases));

  std::map<std::string, DialoguePredictions> predictions;
  if (!config.predictions.empty()) predictions = LoadPredictions(config.predictions);
  std::ostringstream distances;
  distances << "attribute,term,gold_markables,gold_referents,"
               "predicted_referents,distance\n";
  for (Attribute attribute : {Attribute::kColor, Attribute::kSize}) {
    std::map<std::string, TermDistribution> gold;
    std::map<std::string, TermDistribution> predicted;
    for (const DialogueDocument& doc : inputs.documents) {
      const ScenePair& scene = inputs.SceneFor(doc);
      const ReferentMap gold_refs = GoldReferents(doc);
      CollectTermDistributions(doc, scene, gold_refs, attribute, lexicon, gold);
      ReferentMap predicted_refs = gold_refs;
      if (!config.predictions.empty()) {
        auto it = predictions.find(doc.dialogue_id);
        predicted_refs =
            it == predictions.end() ? ReferentMap{} : DecodedReferents(it->second);
      }
      CollectTermDistributions(doc, scene, predicted_refs, attribute, lexicon,
                               predicted);
    }
    const char* name = attribute == Attribute::kColor ? "color" : "size";
    outputs.Add(std::string("distribution_") + name + ".csv",
                DistributionCsv(attribute, gold, predicted));
    for (const auto& [term, dist] : gold) {
      const auto p = predicted.find(term);
      const std::vector<double> predicted_values =
          p == predicted.end() ? std::vector<double>{} : p->second.values;
      const Histogram hg = BuildHistogram(attribute, dist.values);
      const Histogram hp = BuildHistogram(attribute, predicted_values);
      distances << name << ',' << term << ',' << dist.markables << ','
                << dist.values.size() << ',' << predicted_values.size() << ','
                << (hg.total() > 0 && hp.total() > 0
                        ? FormatNumber(DistributionDistance(hg, hp), 6)
                        : std::string("NA"))
                << '\n';
    }
  }
  outputs.Add("distribution_distance.csv", distances.str());
  out << "analyzed " << cases.size() << " relation cases\n";
  return kExitOk;
}

std::vector<SpanRef> SpansOf(const DialogueDocument& doc,
                             std::string_view layer) {
  std::vector<SpanRef> spans;
  if (layer == "modifier") {
    for (const ModifierAnnotation& m : doc.modifiers) {
      spans.push_back({m.utterance, m.span});
    }
    return spans;
  }
  const ExpressionKind kind =
      layer == "attribute" ? ExpressionKind::kAttribute : ExpressionKind::kRelation;
  for (const SpatialExpression& e : doc.expressions) {
    if (e.kind == kind) spans.push_back({e.utterance, e.span});
  }
  return spans;
}

int Agreement(const RunConfig& config, OutputSet& outputs, std::ostream& out) {
  RequireOut(config);
  if (config.annotations.size() != 2) {
    throw UsageError("agreement needs --annotations twice (one per annotator)");
  }
  RequirePath(config.annotations[0], "--annotations");
  RequirePath(config.annotations[1], "--annotations");
  std::map<std::string, DialogueDocument> first;
  for (DialogueDocument& d : ReadDocuments(config.annotations[0])) {
    const std::string id = d.dialogue_id;
    first.emplace(id, std::move(d));
  }
  std::map<std::string, DialogueDocument> second;
  for (DialogueDocument& d : ReadDocuments(config.annotations[1])) {
    const std::string id = d.dialogue_id;
    second.emplace(id, std::move(d));
  }

  // Dialogues present in both files are concatenated into one token stream.
  std::vector<Utterance> utterances;
  std::map<std::string, std::vector<SpanRef>> spans_a;
  std::map<std::string, std::vector<SpanRef>> spans_b;
  for (const auto& [id, doc_a] : first) {
    auto it = second.find(id);
    if (it == second.end()) continue;
    const DialogueDocument& doc_b = it->second;
    if (doc_a.utterances.size() != doc_b.utterances.size()) {
      throw FormatError("dialogue " + id + " has different utterances");
    }
    for (std::size_t u = 0; u < doc_a.utterances.size(); ++u) {
      if (doc_a.utterances[u].tokens != doc_b.utterances[u].tokens) {
        throw FormatError("dialogue " + id + " utterance " + std::to_string(u) +
                          " differs between files");
      }
    }
    const int base = static_cast<int>(utterances.size());
    utterances.insert(utterances.end(), doc_a.utterances.begin(),
                      doc_a.utterances.end());
    for (const char* layer : {"attribute", "relation", "modifier"}) {
      for (SpanRef ref : SpansOf(doc_a, layer)) {
        ref.utterance += base;
        spans_a[layer].push_back(ref);
      }
      for (SpanRef ref : SpansOf(doc_b, layer)) {
        ref.utterance += base;
        spans_b[layer].push_back(ref);
      }
    }
  }
  std::size_t tokens = 0;
  for (const Utterance& u : utterances) tokens += u.tokens.size();
  if (tokens == 0) throw FormatError("the two annotation files share no tokens");

  std::ostringstream csv;
  csv << "layer,mode,tokens,percent_agreement,kappa\n";
  for (const char* layer : {"attribute", "relation", "modifier"}) {
    for (const auto mode :
         {TokenAgreementMode::kAllTokens, TokenAgreementMode::kStartTokens}) {
      AgreementReport report;
      try {
        report = TokenAgreement(spans_a[layer], spans_b[layer], utterances, mode);
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
      }
      csv << layer << ','
          << (mode == TokenAgreementMode::kAllTokens ? "token" : "start") << ','
          << tokens << ',' << FormatNumber(report.percent_agreement, 2) << ','
          << FormatNumber(report.kappa, 4) << '\n';
    }
  }
  outputs.Add("agreement.csv", csv.str());
  out << csv.str();
  return kExitOk;
}

int Split(const RunConfig& config, OutputSet& outputs, std::ostream& out) {
  RequireOut(config);
  std::vector<std::string> ids;
  if (!config.annotations.empty()) {
    RequirePath(config.annotations.front(), "--annotations");
    for (const DialogueDocument& d : ReadDocuments(config.annotations.front())) {
      ids.push_back(d.dialogue_id);
    }
  } else if (config.items > 0) {
    for (int i = 0; i < config.items; ++i) ids.push_back(std::to_string(i));
  } else {
    throw UsageError("split needs --annotations or --items");
  }
  std::vector<json> rounds;
  for (int r = 0; r < kSplitBins; ++r) {
    const SplitAssignment split = RotationSplit(ids, r);
    rounds.push_back({{"round", r},
                      {"train", split.train},
                      {"valid", split.valid},
                      {"test", split.test}});
  }
  outputs.Add("splits.jsonl", ToJsonLines(rounds));
  out << "wrote 10 rounds over " << ids.size() << " items\n";
  return kExitOk;
}

void WriteError(std::ostream& err, std::string_view kind,
                const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  OutputSet outputs;
  int status = kExitOk;
  try {
    if (config.command == "generate") {
      status = Generate(config, outputs, out);
    } else if (config.command == "perturb") {
      status = Perturb(config, outputs, out);
    } else if (config.command == "validate") {
      status = Validate(config, outputs, out);
    } else if (config.command == "decode") {
      status = Decode(config, outputs, out);
    } else if (config.command == "evaluate") {
      status = Evaluate(config, outputs, out);
    } else if (config.command == "test-relations") {
      status = TestRelations(config, outputs, out);
    } else if (config.command == "analyze") {
      status = Analyze(config, outputs, out);
    } else if (config.command == "agreement") {
      status = Agreement(config, outputs, out);
    } else if (config.command == "split") {
      status = Split(config, outputs, out);
    } else {
      throw UsageError("unknown command '" + config.command + "'");
    }
    if (!config.out_dir.empty()) outputs.Commit(config.out_dir);
  } catch (const UsageError& e) {
    WriteError(err, "usage", e.what());
    return kExitOperationalError;
  } catch (const FormatError& e) {
    WriteError(err, "input", e.what());
    return kExitOperationalError;
  } catch (const std::exception& e) {
    WriteError(err, "runtime", e.what());
    return kExitOperationalError;
  }
  return status;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Spatial relation evaluation toolkit for grounded dialogue"};
  app.require_subcommand(1);
  RunConfig config;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", config.out_dir, "Output directory");
  };
  auto add_corpus = [&](CLI::App* sub) {
    sub->add_option("--scenes", config.scenes, "Scene pairs (JSON Lines)");
    sub->add_option("--annotations", config.annotations,
                    "Dialogue annotations (JSON Lines)");
  };

  CLI::App* generate = app.add_subcommand(
      "generate", "Synthetic scenes with oracle-consistent annotations");
  generate->add_option("--seed", seed, "Random seed")->required();
  generate->add_option("--per-relation", config.per_relation,
                       "Testable instances per canonical relation");
  generate->add_flag("--violating", config.violating,
                     "Construct instances that violate their relation");
  add_common(generate);

  CLI::App* perturb = app.add_subcommand(
      "perturb", "Synthetic referent scores from gold with random flips");
  add_corpus(perturb);
  perturb->add_option("--seed", seed, "Random seed")->required();
  perturb->add_option("--flip-probability", config.flip_probability,
                      "Per-entity flip probability");
  add_common(perturb);

  CLI::App* validate = app.add_subcommand("validate", "Lint annotation files");
  add_corpus(validate);
  add_common(validate);

  CLI::App* decode = app.add_subcommand("decode", "Decode referent sets from scores");
  add_corpus(decode);
  decode->add_option("--predictions", config.predictions, "Score file");
  decode->add_option("--decoder", config.decoder, "threshold | topk");
  decode->add_option("--count-source", config.count_source,
                     "file | heuristic | gold");
  add_common(decode);

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Entity accuracy and exact match");
  add_corpus(evaluate);
  evaluate->add_option("--predictions", config.predictions, "Decoded predictions");
  add_common(evaluate);

  CLI::App* test_relations =
      app.add_subcommand("test-relations", "Satisfy/valid tables");
  add_corpus(test_relations);
  test_relations->add_option("--predictions", config.predictions,
                             "Decoded predictions (gold referents if omitted)");
  test_relations->add_option("--group", config.group,
                             "relation | category | strength | factor");
  test_relations->add_flag("--emit-cases", config.emit_cases,
                           "Also write per-case records");
  add_common(test_relations);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Strength, factor, difference and distribution tables");
  add_corpus(analyze);
  analyze->add_option("--predictions", config.predictions, "Decoded predictions");
  analyze->add_option("--lexicon", config.lexicon, "Lexicon overrides (JSON)");
  analyze->add_flag("--emit-cases", config.emit_cases,
                    "Also write per-case records");
  add_common(analyze);

  CLI::App* agreement =
      app.add_subcommand("agreement", "Token-level agreement of two annotators");
  agreement->add_option("--annotations", config.annotations,
                        "Annotation file (give twice)");
  add_common(agreement);

  CLI::App* split = app.add_subcommand("split", "10-round rotation split");
  split->add_option("--annotations", config.annotations, "Dialogue ids source");
  split->add_option("--items", config.items, "Use ids 0..N-1 instead");
  add_common(split);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    WriteError(err, "usage", e.what());
    return kExitOperationalError;
  }
  config.command = app.get_subcommands().front()->get_name();
  if (generate->parsed() || perturb->parsed()) config.seed = seed;
  return Run(config, out, err);
}

}  // namespace spatialref
