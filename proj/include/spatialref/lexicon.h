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

#ifndef SPATIALREF_LEXICON_H_
#define SPATIALREF_LEXICON_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spatialref/annotation.h"
#include "spatialref/scene.h"

namespace spatialref {

// Lowercases and splits on whitespace, trimming sentence punctuation from
// token edges. Apostrophes and hyphens are kept ("isn't", "mid-size").
std::vector<std::string> Tokenize(std::string_view text);

// Multi-token phrases mapped to a canonical label. Lookup is
// case-insensitive and returns the longest matching phrase anywhere in the
// token sequence; ties go to the earliest start, then to insertion order.
class PhraseTable {
 public:
  void Add(std::string_view phrase, std::string label);

  std::optional<std::string> LongestMatch(
      std::span<const std::string> tokens) const;

  bool empty() const { return entries_.empty(); }

 private:
  struct Entry {
    std::vector<std::string> tokens;
    std::string label;
  };
  std::vector<Entry> entries_;
};

struct Lexicon {
  PhraseTable modifiers;  // label: modification type name
  PhraseTable color;      // label: canonical color term
  PhraseTable size;       // label: canonical size term

  static const Lexicon& Default();

  // Reads a JSON lexicon file. Each present section ("modifiers", "color",
  // "size") replaces the corresponding default section. Throws
  // std::runtime_error on unreadable or malformed files.
  static Lexicon LoadWithOverrides(const std::string& path);
};

std::optional<ModificationType> ClassifyModifier(
    std::span<const std::string> tokens,
    const Lexicon& lexicon = Lexicon::Default());

// attribute must be kColor or kSize.
std::optional<std::string> ExtractAttributeTerm(
    std::span<const std::string> tokens, Attribute attribute,
    const Lexicon& lexicon = Lexicon::Default());

}  // namespace spatialref

#endif  // SPATIALREF_LEXICON_H_
