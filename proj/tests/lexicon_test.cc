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

#include "spatialref/lexicon.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace spatialref {
namespace {

std::optional<ModificationType> Modifier(const char* text) {
  return ClassifyModifier(Tokenize(text));
}

std::optional<std::string> Term(const char* text, Attribute attribute) {
  return ExtractAttributeTerm(Tokenize(text), attribute);
}

std::string WriteTemp(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path.string();
}

TEST(TokenizeTest, LowercasesAndTrimsPunctuation) {
  EXPECT_EQ(Tokenize("  The Dark, one?  It isn't mid-size."),
            (std::vector<std::string>{"the", "dark", "one", "it", "isn't",
                                      "mid-size"}));
  EXPECT_TRUE(Tokenize(" ... ").empty());
}

TEST(ClassifyModifierTest, LexiconExamples) {
  EXPECT_EQ(Modifier("very slightly"), ModificationType::kSubtlety);
  EXPECT_EQ(Modifier("almost exactly"), ModificationType::kCertainty);
  EXPECT_EQ(Modifier("purple"), std::nullopt);
}

TEST(ClassifyModifierTest, EveryDefaultPhraseMapsToItsType) {
  const std::pair<const char*, ModificationType> expected[] = {
      {"slightly", ModificationType::kSubtlety},
      {"a little", ModificationType::kSubtlety},
      {"a bit", ModificationType::kSubtlety},
      {"a tiny bit", ModificationType::kSubtlety},
      {"very", ModificationType::kExtremity},
      {"much", ModificationType::kExtremity},
      {"pretty", ModificationType::kExtremity},
      {"quite", ModificationType::kExtremity},
      {"really", ModificationType::kExtremity},
      {"almost", ModificationType::kUncertainty},
      {"about", ModificationType::kUncertainty},
      {"kind of", ModificationType::kUncertainty},
      {"smallish", ModificationType::kUncertainty},
      {"not completely", ModificationType::kUncertainty},
      {"directly", ModificationType::kCertainty},
      {"exactly", ModificationType::kCertainty},
      {"perfect", ModificationType::kCertainty},
      {"medium", ModificationType::kNeutrality},
      {"med", ModificationType::kNeutrality},
      {"fairly", ModificationType::kNeutrality},
      {"mid-size", ModificationType::kNeutrality},
      {"slightly medium", ModificationType::kNeutrality},
      {"not", ModificationType::kNegation},
      {"isn't", ModificationType::kNegation},
      {"not perceptibly", ModificationType::kNegation},
  };
  for (const auto& [phrase, type] : expected) {
    EXPECT_EQ(Modifier(phrase), type) << phrase;
  }
}

TEST(ClassifyModifierTest, CaseInsensitiveAndLongestMatch) {
  EXPECT_EQ(Modifier("It is ALMOST EXACTLY there"), ModificationType::kCertainty);
  EXPECT_EQ(Modifier("not completely left"), ModificationType::kUncertainty);
  EXPECT_EQ(Modifier("to the left a tiny bit"), ModificationType::kSubtlety);
}

TEST(ExtractAttributeTermTest, Examples) {
  EXPECT_EQ(Term("a very dark dot", Attribute::kColor), "very dark");
  EXPECT_EQ(Term("the large black one", Attribute::kSize), "large");
  EXPECT_EQ(Term("that one", Attribute::kColor), std::nullopt);
}

TEST(ExtractAttributeTermTest, LongestMatchAndSpellings) {
  EXPECT_EQ(Term("the light grey dot", Attribute::kColor), "light grey");
  EXPECT_EQ(Term("the light gray dot", Attribute::kColor), "light grey");
  EXPECT_EQ(Term("a Gray one", Attribute::kColor), "grey");
  EXPECT_EQ(Term("a very small dot", Attribute::kSize), "very small");
  EXPECT_EQ(Term("the large black one", Attribute::kColor), "black");
}

TEST(ExtractAttributeTermTest, RejectsPositionalAttributes) {
  EXPECT_THROW(Term("left", Attribute::kX), std::invalid_argument);
}

TEST(PhraseTableTest, TiesGoToEarliestStartThenInsertionOrder) {
  PhraseTable table;
  table.Add("red", "first");
  table.Add("blue", "second");
  table.Add("red", "shadowed");
  const std::vector<std::string> tokens = {"blue", "red"};
  EXPECT_EQ(table.LongestMatch(tokens), "second");
  const std::vector<std::string> red = {"red"};
  EXPECT_EQ(table.LongestMatch(red), "first");
  EXPECT_THROW(table.Add(" , ", "x"), std::invalid_argument);
}

TEST(LexiconFileTest, SectionsReplaceDefaults) {
  const std::string path = WriteTemp(
      "spatialref_lexicon_override.json",
      R"({"color": {"inky": ["inky", "ink black"]}, "size": ["huge"]})");
  const Lexicon lexicon = Lexicon::LoadWithOverrides(path);
  EXPECT_EQ(ExtractAttributeTerm(Tokenize("an ink black dot"), Attribute::kColor,
                                 lexicon),
            "inky");
  EXPECT_EQ(ExtractAttributeTerm(Tokenize("a black dot"), Attribute::kColor,
                                 lexicon),
            std::nullopt);
  EXPECT_EQ(ExtractAttributeTerm(Tokenize("a HUGE dot"), Attribute::kSize,
                                 lexicon),
            "huge");
  // Untouched sections keep their defaults.
  EXPECT_EQ(ClassifyModifier(Tokenize("slightly"), lexicon),
            ModificationType::kSubtlety);
  std::remove(path.c_str());
}

TEST(LexiconFileTest, ModifierSection) {
  const std::string path = WriteTemp("spatialref_lexicon_modifiers.json",
                                     R"({"modifiers": {"extremity": ["super"]}})");
  const Lexicon lexicon = Lexicon::LoadWithOverrides(path);
  EXPECT_EQ(ClassifyModifier(Tokenize("super close"), lexicon),
            ModificationType::kExtremity);
  EXPECT_EQ(ClassifyModifier(Tokenize("very close"), lexicon), std::nullopt);
  std::remove(path.c_str());
}

TEST(LexiconFileTest, MalformedFilesThrow) {
  EXPECT_THROW(Lexicon::LoadWithOverrides("/nonexistent/lexicon.json"),
               std::runtime_error);
  const std::pair<const char*, const char*> bad[] = {
      {"spatialref_bad1.json", "{not json"},
      {"spatialref_bad2.json", "[1, 2]"},
      {"spatialref_bad3.json", R"({"modifiers": {"loud": ["very"]}})"},
      {"spatialref_bad4.json", R"({"color": 5})"},
      {"spatialref_bad5.json", R"({"color": {"x": "y"}})"},
      {"spatialref_bad6.json", R"({"size": [" "]})"},
  };
  for (const auto& [name, contents] : bad) {
    const std::string path = WriteTemp(name, contents);
    EXPECT_THROW(Lexicon::LoadWithOverrides(path), std::runtime_error) << name;
    std::remove(path.c_str());
  }
}

}  // namespace
}  // namespace spatialref
