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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include "fixtures.h"
#include "spatialref/synthetic.h"

namespace spatialref {
namespace {

namespace fs = std::filesystem;

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    path_ = (fs::temp_directory_path() /
             ("spatialref_io_" + std::to_string(counter_++) + ".jsonl"))
                .string();
    std::ofstream(path_) << contents;
  }
  ~TempFile() { fs::remove(path_); }
  const std::string& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::string path_;
};

std::string ErrorOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

TEST(SceneJsonTest, RoundTrips) {
  const ScenePair scene = GenerateScenePair(12, 5);
  const nlohmann::json j = SceneToJson(scene);
  EXPECT_EQ(SceneFromJson(j), scene);
  EXPECT_EQ(SceneToJson(SceneFromJson(j)).dump(), j.dump());
  EXPECT_EQ(j["views"]["A"].size(), 7u);
}

TEST(SceneJsonTest, RejectsMissingFields) {
  nlohmann::json j = SceneToJson(GenerateScenePair(12, 5));
  j.erase("world_offset");
  EXPECT_NE(ErrorOf([&] { SceneFromJson(j); }).find("world_offset"),
            std::string::npos);
  nlohmann::json wrong_type = SceneToJson(GenerateScenePair(12, 5));
  wrong_type["views"]["A"][0]["color"] = "dark";
  EXPECT_THROW(SceneFromJson(wrong_type), FormatError);
}

TEST(SpanJsonTest, ContiguousAndGappedForms) {
  EXPECT_EQ(SpanToJson(TokenSpan::Range(2, 5)).dump(), "[2,5]");
  const TokenSpan gapped({1, 2, 6});
  EXPECT_EQ(SpanToJson(gapped).dump(), R"({"indices":[1,2,6]})");
  EXPECT_EQ(SpanFromJson(SpanToJson(gapped)), gapped);
  EXPECT_EQ(SpanFromJson(nlohmann::json::parse("[3,4]")), TokenSpan::Range(3, 4));
  // A contiguous index list reads back as the equivalent range.
  EXPECT_EQ(SpanFromJson(nlohmann::json::parse(R"({"indices":[3,4,5]})")),
            TokenSpan::Range(3, 6));
}

TEST(SpanJsonTest, RejectsMalformedSpans) {
  EXPECT_THROW(SpanFromJson(nlohmann::json::parse("[5,2]")), FormatError);
  EXPECT_THROW(SpanFromJson(nlohmann::json::parse("[1,2,3]")), FormatError);
  EXPECT_THROW(SpanFromJson(nlohmann::json::parse("\"1-2\"")), FormatError);
}

TEST(DocumentJsonTest, FixtureRoundTrips) {
  const testing::SampleFixture fixture = testing::LoadSampleFixture();
  ASSERT_EQ(fixture.documents.size(), 3u);
  for (const DialogueDocument& doc : fixture.documents) {
    const nlohmann::json j = DocumentToJson(doc);
    EXPECT_EQ(DocumentToJson(DocumentFromJson(j)).dump(), j.dump());
  }
}

TEST(DocumentJsonTest, SyntheticCorpusRoundTrips) {
  SyntheticOptions options;
  options.seed = 3;
  options.instances_per_relation = 2;
  const SyntheticCorpus corpus = GenerateSyntheticCorpus(options);
  for (const DialogueDocument& doc : corpus.documents) {
    const nlohmann::json j = DocumentToJson(doc);
    EXPECT_EQ(DocumentToJson(DocumentFromJson(j)).dump(), j.dump());
  }
}

TEST(DocumentJsonTest, RejectsUnknownNames) {
  nlohmann::json j = DocumentToJson(testing::LoadSampleFixture().documents[0]);
  j["expressions"][0]["canonical"][0] = "leftish";
  EXPECT_THROW(DocumentFromJson(j), FormatError);
  nlohmann::json k = DocumentToJson(testing::LoadSampleFixture().documents[0]);
  k["expressions"][0]["kind"] = "gesture";
  EXPECT_THROW(DocumentFromJson(k), FormatError);
}

TEST(PredictionsJsonTest, RoundTripsAndValidates) {
  DialoguePredictions p;
  p.dialogue_id = "d1";
  PredictionEntry full{"m1", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7}, 2,
                       std::vector<int>{4, 9}};
  PredictionEntry bare{"m2", {0, 0, 0, 0, 0, 0, 1}, std::nullopt, std::nullopt};
  p.predictions = {full, bare};
  const nlohmann::json j = PredictionsToJson(p);
  const DialoguePredictions back = PredictionsFromJson(j);
  ASSERT_EQ(back.predictions.size(), 2u);
  EXPECT_EQ(back.predictions[0].scores, full.scores);
  EXPECT_EQ(back.predictions[0].count, 2);
  EXPECT_EQ(back.predictions[0].decoded, full.decoded);
  EXPECT_FALSE(back.predictions[1].count.has_value());
  EXPECT_FALSE(back.predictions[1].decoded.has_value());
  EXPECT_EQ(PredictionsToJson(back).dump(), j.dump());

  nlohmann::json short_scores = j;
  short_scores["predictions"][0]["scores"].erase(0);
  EXPECT_NE(ErrorOf([&] { PredictionsFromJson(short_scores); })
                .find("expected 7 scores"),
            std::string::npos);
  nlohmann::json bad_count = j;
  bad_count["predictions"][0]["count"] = 8;
  EXPECT_THROW(PredictionsFromJson(bad_count), FormatError);
}

TEST(JsonLinesTest, ReadsAndSkipsBlankLines) {
  TempFile file("{\"a\":1}\n\n{\"a\":2}\n");
  const auto docs = ReadJsonLines(file.path());
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[1]["a"], 2);
  EXPECT_EQ(ToJsonLines(docs), "{\"a\":1}\n{\"a\":2}\n");
}

TEST(JsonLinesTest, MalformedLineReportsPathAndLine) {
  TempFile file("{\"a\":1}\n{\"a\":\n");
  const std::string message = ErrorOf([&] { ReadJsonLines(file.path()); });
  EXPECT_NE(message.find(file.path() + ":2:"), std::string::npos) << message;
}

TEST(JsonLinesTest, MissingFileIsAFormatError) {
  EXPECT_THROW(ReadJsonLines("/nonexistent/spatialref.jsonl"), FormatError);
}

TEST(JsonLinesTest, BadDocumentReportsItsIndex) {
  const std::string good =
      SceneToJson(GenerateScenePair(1, 4)).dump() + "\n";
  TempFile file(good + "{\"scene_id\":\"x\"}\n");
  const std::string message = ErrorOf([&] { ReadScenes(file.path()); });
  EXPECT_NE(message.find("document 2"), std::string::npos) << message;
}

TEST(JsonLinesTest, ScenesFileRoundTrips) {
  std::vector<nlohmann::json> docs;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    docs.push_back(SceneToJson(GenerateScenePair(seed, 4 + seed % 3)));
  }
  TempFile file(ToJsonLines(docs));
  const auto scenes = ReadScenes(file.path());
  ASSERT_EQ(scenes.size(), 5u);
  EXPECT_EQ(scenes[3], GenerateScenePair(3, 4));
}

}  // namespace
}  // namespace spatialref
