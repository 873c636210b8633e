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

#include "spatialref/io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace spatialref {
namespace {

using nlohmann::json;

const json& Field(const json& object, const char* name) {
  if (!object.is_object()) throw FormatError("expected a JSON object");
  auto it = object.find(name);
  if (it == object.end()) {
    throw FormatError(std::string("missing field '") + name + "'");
  }
  return *it;
}

template <typename T>
T Get(const json& object, const char* name) {
  try {
    return Field(object, name).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + name + "': " + e.what());
  }
}

template <typename T>
T GetOr(const json& object, const char* name, T fallback) {
  auto it = object.find(name);
  if (it == object.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + name + "': " + e.what());
  }
}

json EntityToJson(const Entity& e) {
  return {{"id", e.id}, {"x", e.x}, {"y", e.y}, {"color", e.color},
          {"size", e.size}};
}

Entity EntityFromJson(const json& j) {
  return {Get<int>(j, "id"), Get<double>(j, "x"), Get<double>(j, "y"),
          Get<int>(j, "color"), Get<int>(j, "size")};
}

View ViewFromJson(const json& j, Player player) {
  View view;
  view.player = player;
  if (!j.is_array()) throw FormatError("view must be a list of entities");
  for (const json& e : j) view.entities.push_back(EntityFromJson(e));
  std::sort(view.entities.begin(), view.entities.end(),
            [](const Entity& a, const Entity& b) { return a.id < b.id; });
  return view;
}

json ViewToJson(const View& view) {
  std::vector<Entity> sorted = view.entities;
  std::sort(sorted.begin(), sorted.end(),
            [](const Entity& a, const Entity& b) { return a.id < b.id; });
  json list = json::array();
  for (const Entity& e : sorted) list.push_back(EntityToJson(e));
  return list;
}

// Wraps errors from one document with its position in the list.
template <typename Fn>
auto WithContext(const std::string& context, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const FormatError& e) {
    throw FormatError(context + ": " + e.what());
  }
}

}  // namespace

json SceneToJson(const ScenePair& scene) {
  std::vector<int> shared = scene.shared_ids;
  std::sort(shared.begin(), shared.end());
  return {{"scene_id", scene.scene_id},
          {"shared_ids", shared},
          {"world_offset", {scene.world_offset[0], scene.world_offset[1]}},
          {"views",
           {{"A", ViewToJson(scene.view_a)}, {"B", ViewToJson(scene.view_b)}}}};
}

ScenePair SceneFromJson(const json& j) {
  ScenePair scene;
  scene.scene_id = Get<std::string>(j, "scene_id");
  return WithContext("scene " + scene.scene_id, [&] {
    scene.shared_ids = Get<std::vector<int>>(j, "shared_ids");
    std::sort(scene.shared_ids.begin(), scene.shared_ids.end());
    const auto offset = Get<std::vector<double>>(j, "world_offset");
    if (offset.size() != 2) throw FormatError("world_offset must be [dx, dy]");
    scene.world_offset = {offset[0], offset[1]};
    const json& views = Field(j, "views");
    scene.view_a = ViewFromJson(Field(views, "A"), Player::kA);
    scene.view_b = ViewFromJson(Field(views, "B"), Player::kB);
    return scene;
  });
}

json SpanToJson(const TokenSpan& span) {
  if (!span.empty() && span.contiguous()) {
    return json::array({span.first(), span.last() + 1});
  }
  return {{"indices", span.indices()}};
}

TokenSpan SpanFromJson(const json& j) {
  try {
    if (j.is_array()) {
      if (j.size() != 2) {
        throw FormatError("span pair must be [start, end]");
      }
      const int start = j[0].get<int>();
      const int end = j[1].get<int>();
      if (end < start) throw FormatError("span end precedes start");
      return TokenSpan::Range(start, end);
    }
    if (j.is_object()) {
      return TokenSpan(Field(j, "indices").get<std::vector<int>>());
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("span: ") + e.what());
  }
  throw FormatError("span must be [start, end] or {\"indices\": [...]}");
}

json DocumentToJson(const DialogueDocument& doc) {
  json utterances = json::array();
  for (const Utterance& u : doc.utterances) {
    utterances.push_back({{"index", u.index},
                          {"speaker", std::string(PlayerName(u.speaker))},
                          {"tokens", u.tokens}});
  }
  json markables = json::array();
  for (const Markable& m : doc.markables) {
    markables.push_back({{"id", m.id},
                         {"utterance", m.utterance},
                         {"span", SpanToJson(m.span)},
                         {"referents", m.referents}});
  }
  json expressions = json::array();
  for (const SpatialExpression& e : doc.expressions) {
    json canonical = json::array();
    for (RelationKind kind : e.canonical) {
      canonical.push_back(std::string(RelationName(kind)));
    }
    expressions.push_back(
        {{"id", e.id},
         {"kind", e.kind == ExpressionKind::kRelation ? "relation" : "attribute"},
         {"utterance", e.utterance},
         {"span", SpanToJson(e.span)},
         {"subjects", e.subjects},
         {"objects", e.objects},
         {"no_object", e.no_object},
         {"unannotatable", e.unannotatable},
         {"canonical", canonical},
         {"modifiers", e.modifiers}});
  }
  json modifiers = json::array();
  for (const ModifierAnnotation& m : doc.modifiers) {
    modifiers.push_back({{"id", m.id},
                         {"utterance", m.utterance},
                         {"span", SpanToJson(m.span)},
                         {"type", std::string(ModificationName(m.type))},
                         {"modificand", m.modificand}});
  }
  return {{"dialogue_id", doc.dialogue_id}, {"scene_id", doc.scene_id},
          {"utterances", utterances},       {"markables", markables},
          {"expressions", expressions},     {"modifiers", modifiers}};
}

DialogueDocument DocumentFromJson(const json& j) {
  DialogueDocument doc;
  doc.dialogue_id = Get<std::string>(j, "dialogue_id");
  return WithContext("dialogue " + doc.dialogue_id, [&] {
    doc.scene_id = Get<std::string>(j, "scene_id");
    for (const json& u : GetOr<json>(j, "utterances", json::array())) {
      Utterance utterance;
      utterance.index = Get<int>(u, "index");
      try {
        utterance.speaker = ParsePlayer(Get<std::string>(u, "speaker"));
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
      }
      utterance.tokens = Get<std::vector<std::string>>(u, "tokens");
      doc.utterances.push_back(std::move(utterance));
    }
    for (const json& m : GetOr<json>(j, "markables", json::array())) {
      Markable markable;
      markable.id = Get<std::string>(m, "id");
      markable.utterance = Get<int>(m, "utterance");
      markable.span = SpanFromJson(Field(m, "span"));
      markable.referents = GetOr<std::vector<int>>(m, "referents", {});
      doc.markables.push_back(std::move(markable));
    }
    for (const json& e : GetOr<json>(j, "expressions", json::array())) {
      SpatialExpression expr;
      expr.id = Get<std::string>(e, "id");
      const std::string kind = Get<std::string>(e, "kind");
      if (kind == "relation") {
        expr.kind = ExpressionKind::kRelation;
      } else if (kind == "attribute") {
        expr.kind = ExpressionKind::kAttribute;
      } else {
        throw FormatError("expression " + expr.id + ": unknown kind '" +
                          kind + "'");
      }
      expr.utterance = Get<int>(e, "utterance");
      expr.span = SpanFromJson(Field(e, "span"));
      expr.subjects = GetOr<std::vector<std::string>>(e, "subjects", {});
      expr.objects = GetOr<std::vector<std::string>>(e, "objects", {});
      expr.no_object = GetOr<bool>(e, "no_object", false);
      expr.unannotatable = GetOr<bool>(e, "unannotatable", false);
      for (const std::string& name :
           GetOr<std::vector<std::string>>(e, "canonical", {})) {
        const auto relation = ParseRelationKind(name);
        if (!relation) {
          throw FormatError("expression " + expr.id +
                            ": unknown canonical relation '" + name + "'");
        }
        if (std::find(expr.canonical.begin(), expr.canonical.end(),
                      *relation) == expr.canonical.end()) {
          expr.canonical.push_back(*relation);
        }
      }
      std::sort(expr.canonical.begin(), expr.canonical.end());
      expr.modifiers = GetOr<std::vector<std::string>>(e, "modifiers", {});
      doc.expressions.push_back(std::move(expr));
    }
    for (const json& m : GetOr<json>(j, "modifiers", json::array())) {
      ModifierAnnotation mod;
      mod.id = Get<std::string>(m, "id");
      mod.utterance = Get<int>(m, "utterance");
      mod.span = SpanFromJson(Field(m, "span"));
      const std::string type = Get<std::string>(m, "type");
      const auto parsed = ParseModificationType(type);
      if (!parsed) {
        throw FormatError("modifier " + mod.id + ": unknown type '" + type +
                          "'");
      }
      mod.type = *parsed;
      mod.modificand = Get<std::string>(m, "modificand");
      doc.modifiers.push_back(std::move(mod));
    }
    return doc;
  });
}

json PredictionsToJson(const DialoguePredictions& predictions) {
  json list = json::array();
  for (const PredictionEntry& p : predictions.predictions) {
    json entry = {{"markable_id", p.markable_id}, {"scores", p.scores}};
    if (p.count) entry["count"] = *p.count;
    if (p.decoded) entry["decoded"] = *p.decoded;
    list.push_back(std::move(entry));
  }
  return {{"dialogue_id", predictions.dialogue_id}, {"predictions", list}};
}

DialoguePredictions PredictionsFromJson(const json& j) {
  DialoguePredictions out;
  out.dialogue_id = Get<std::string>(j, "dialogue_id");
  return WithContext("predictions for " + out.dialogue_id, [&] {
    for (const json& p : Get<json>(j, "predictions")) {
      PredictionEntry entry;
      entry.markable_id = Get<std::string>(p, "markable_id");
      entry.scores = Get<std::vector<double>>(p, "scores");
      if (entry.scores.size() != static_cast<std::size_t>(kEntitiesPerView)) {
        throw FormatError("markable " + entry.markable_id +
                          ": expected 7 scores");
      }
      if (p.contains("count") && !p["count"].is_null()) {
        entry.count = Get<int>(p, "count");
        if (*entry.count < 0 || *entry.count > kEntitiesPerView) {
          throw FormatError("markable " + entry.markable_id +
                            ": count outside [0, 7]");
        }
      }
      if (p.contains("decoded") && !p["decoded"].is_null()) {
        entry.decoded = Get<std::vector<int>>(p, "decoded");
      }
      out.predictions.push_back(std::move(entry));
    }
    return out;
  });
}

std::vector<json> ReadJsonLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::vector<json> documents;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      documents.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw FormatError(path + ":" + std::to_string(line_number) + ": " +
                        e.what());
    }
  }
  return documents;
}

std::string ToJsonLines(const std::vector<json>& documents) {
  std::string out;
  for (const json& doc : documents) {
    out += doc.dump();
    out += '\n';
  }
  return out;
}

namespace {

template <typename T, typename Parse>
std::vector<T> ReadAll(const std::string& path, Parse parse) {
  std::vector<T> out;
  int index = 0;
  for (const json& j : ReadJsonLines(path)) {
    ++index;
    try {
      out.push_back(parse(j));
    } catch (const FormatError& e) {
      throw FormatError(path + " document " + std::to_string(index) + ": " +
                        e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<ScenePair> ReadScenes(const std::string& path) {
  return ReadAll<ScenePair>(path, SceneFromJson);
}

std::vector<DialogueDocument> ReadDocuments(const std::string& path) {
  return ReadAll<DialogueDocument>(path, DocumentFromJson);
}

std::vector<DialoguePredictions> ReadPredictions(const std::string& path) {
  return ReadAll<DialoguePredictions>(path, PredictionsFromJson);
}

}  // namespace spatialref
