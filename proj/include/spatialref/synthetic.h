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

#ifndef SPATIALREF_SYNTHETIC_H_
#define SPATIALREF_SYNTHETIC_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spatialref/annotation.h"
#include "spatialref/scene.h"

namespace spatialref {

// Whether constructed instances should satisfy their labeled relation or
// provably violate it.
enum class Polarity { kSatisfying, kViolating };

// Referents chosen for one relation instance, as entity ids.
struct RelationInstance {
  std::vector<int> subjects;
  std::vector<int> objects;
  bool no_object = false;
};

// Picks referents from `view` so that `kind` holds (or fails) by
// construction, with a safety margin of 5 view units on positional
// conditions. Works from closed-form geometry (two-point slopes, direct
// pairwise distances), not from the relation test code. Returns nullopt when
// the view admits no such instance.
std::optional<RelationInstance> ConstructInstance(RelationKind kind,
                                                  Polarity polarity,
                                                  const View& view,
                                                  std::uint64_t seed);

struct SyntheticOptions {
  std::uint64_t seed = 0;
  int instances_per_relation = 500;
  Polarity polarity = Polarity::kSatisfying;
  // At most this many relation instances per dialogue.
  int instances_per_dialogue = 4;
};

struct SyntheticCorpus {
  std::vector<ScenePair> scenes;
  std::vector<DialogueDocument> documents;
};

// Scenes from GenerateScenePair plus dialogue annotations whose gold
// referents satisfy (or violate) every testable canonical relation. Each of
// the 24 relations receives at least `instances_per_relation` testable
// instances. The output is a pure function of the options.
SyntheticCorpus GenerateSyntheticCorpus(const SyntheticOptions& options);

}  // namespace spatialref

#endif  // SPATIALREF_SYNTHETIC_H_
