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

#ifndef SPATIALREF_TESTS_FIXTURES_H_
#define SPATIALREF_TESTS_FIXTURES_H_

#include <string>
#include <vector>

#include "spatialref/annotation.h"
#include "spatialref/io.h"
#include "spatialref/scene.h"

namespace spatialref::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(SPATIALREF_TEST_DATA) + "/" + name;
}

// The three hand-annotated dialogues over one hand-built scene pair.
struct SampleFixture {
  ScenePair scene;
  std::vector<DialogueDocument> documents;
};

inline SampleFixture LoadSampleFixture() {
  SampleFixture fixture;
  fixture.scene = ReadScenes(DataPath("sample_scenes.jsonl")).at(0);
  fixture.documents = ReadDocuments(DataPath("sample_annotations.jsonl"));
  return fixture;
}

}  // namespace spatialref::testing

#endif  // SPATIALREF_TESTS_FIXTURES_H_
