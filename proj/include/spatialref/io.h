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

#ifndef SPATIALREF_IO_H_
#define SPATIALREF_IO_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "spatialref/annotation.h"
#include "spatialref/referent.h"
#include "spatialref/scene.h"

namespace spatialref {

// Malformed or inconsistent input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scene pair documents:
//   {"scene_id", "shared_ids", "world_offset": [dx, dy],
//    "views": {"A": [entity...], "B": [entity...]}}
// with entities {"id", "x", "y", "color", "size"} sorted by id.
nlohmann::json SceneToJson(const ScenePair& scene);
ScenePair SceneFromJson(const nlohmann::json& json);

// Dialogue annotation documents. Spans are written as a half-open
// [start, end] pair when contiguous and as {"indices": [...]} otherwise;
// both forms are accepted on input.
nlohmann::json DocumentToJson(const DialogueDocument& doc);
DialogueDocument DocumentFromJson(const nlohmann::json& json);

nlohmann::json SpanToJson(const TokenSpan& span);
TokenSpan SpanFromJson(const nlohmann::json& json);

// Per-dialogue model output. `decoded` holds entity ids (not positions).
struct PredictionEntry {
  std::string markable_id;
  std::vector<double> scores;
  std::optional<int> count;
  std::optional<std::vector<int>> decoded;
};

struct DialoguePredictions {
  std::string dialogue_id;
  std::vector<PredictionEntry> predictions;
};

nlohmann::json PredictionsToJson(const DialoguePredictions& predictions);
DialoguePredictions PredictionsFromJson(const nlohmann::json& json);

// JSON Lines: one compact document per line. Reading reports the file and
// line of the first malformed document as a FormatError.
std::vector<nlohmann::json> ReadJsonLines(const std::string& path);
std::string ToJsonLines(const std::vector<nlohmann::json>& documents);

std::vector<ScenePair> ReadScenes(const std::string& path);
std::vector<DialogueDocument> ReadDocuments(const std::string& path);
std::vector<DialoguePredictions> ReadPredictions(const std::string& path);

}  // namespace spatialref

#endif  // SPATIALREF_IO_H_
