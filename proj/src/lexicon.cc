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

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace spatialref {
namespace {

bool IsEdgePunctuation(char c) {
  switch (c) {
    case '.':
    case ',':
    case '!':
    case '?':
    case ';':
    case ':':
    case '"':
    case '(':
    case ')':
      return true;
    default:
      return false;
  }
}

std::string Normalize(std::string_view token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && IsEdgePunctuation(token[begin])) ++begin;
  while (end > begin && IsEdgePunctuation(token[end - 1])) --end;
  std::string out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    out.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(token[i]))));
  }
  return out;
}

// Defaults seeded from the most frequent annotated modifiers per type.
Lexicon BuildDefault() {
  Lexicon lexicon;
  const std::pair<const char*, std::vector<const char*>> modifiers[] = {
      {"subtlety",
       {"slightly", "a little", "a bit", "a tiny bit", "very slightly"}},
      {"extremity", {"very", "much", "pretty", "quite", "really"}},
      {"uncertainty",
       {"almost", "about", "kind of", "smallish", "not completely"}},
      {"certainty", {"directly", "exactly", "perfect", "almost exactly"}},
      {"neutrality",
       {"medium", "med", "fairly", "mid-size", "slightly medium"}},
      {"negation", {"not", "isn't", "not perceptibly"}},
  };
  for (const auto& [type, phrases] : modifiers) {
    for (const char* phrase : phrases) lexicon.modifiers.Add(phrase, type);
  }

  const std::pair<const char*, std::vector<const char*>> colors[] = {
      {"black", {"black"}},
      {"dark", {"dark"}},
      {"dark grey", {"dark grey", "dark gray"}},
      {"grey", {"grey", "gray"}},
      {"light grey", {"light grey", "light gray"}},
      {"light", {"light"}},
      {"medium grey", {"medium grey", "medium gray"}},
      {"very dark", {"very dark"}},
      {"very light", {"very light"}},
  };
  for (const auto& [term, phrases] : colors) {
    for (const char* phrase : phrases) lexicon.color.Add(phrase, term);
  }
  for (const char* term : {"tiny", "small", "medium", "large", "big",
                           "very small", "very large"}) {
    lexicon.size.Add(term, term);
  }
  return lexicon;
}

// Accepts either a list of terms (each its own canonical form) or an object
// mapping canonical terms to lists of surface phrases.
PhraseTable ParseTermSection(const nlohmann::json& section,
                             const std::string& name) {
  PhraseTable table;
  if (section.is_array()) {
    for (const auto& term : section) {
      table.Add(term.get<std::string>(), Normalize(term.get<std::string>()));
    }
  } else if (section.is_object()) {
    for (const auto& [term, phrases] : section.items()) {
      if (!phrases.is_array()) {
        throw std::runtime_error("lexicon section '" + name +
                                 "': phrases for '" + term +
                                 "' must be a list");
      }
      for (const auto& phrase : phrases) {
        table.Add(phrase.get<std::string>(), term);
      }
    }
  } else {
    throw std::runtime_error("lexicon section '" + name +
                             "' must be a list or an object");
  }
  return table;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) {
      std::string token = Normalize(text.substr(start, i - start));
      if (!token.empty()) tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

void PhraseTable::Add(std::string_view phrase, std::string label) {
  std::vector<std::string> tokens = Tokenize(phrase);
  if (tokens.empty()) {
    throw std::invalid_argument("empty lexicon phrase");
  }
  entries_.push_back({std::move(tokens), std::move(label)});
}

std::optional<std::string> PhraseTable::LongestMatch(
    std::span<const std::string> tokens) const {
  std::vector<std::string> normalized;
  normalized.reserve(tokens.size());
  for (const std::string& t : tokens) normalized.push_back(Normalize(t));

  const Entry* best = nullptr;
  for (std::size_t start = 0; start < normalized.size(); ++start) {
    for (const Entry& entry : entries_) {
      const std::size_t n = entry.tokens.size();
      if (start + n > normalized.size()) continue;
      if (best != nullptr && n <= best->tokens.size()) continue;
      bool match = true;
      for (std::size_t k = 0; k < n && match; ++k) {
        match = normalized[start + k] == entry.tokens[k];
      }
      if (match) best = &entry;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->label;
}

const Lexicon& Lexicon::Default() {
  static const Lexicon* lexicon = new Lexicon(BuildDefault());
  return *lexicon;
}

Lexicon Lexicon::LoadWithOverrides(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon file " + path);
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed lexicon file " + path + ": " +
                             e.what());
  }
  if (!root.is_object()) {
    throw std::runtime_error("lexicon file " + path + " must hold an object");
  }
  Lexicon lexicon = Default();
  try {
    if (root.contains("modifiers")) {
      PhraseTable table;
      for (const auto& [type, phrases] : root["modifiers"].items()) {
        if (!ParseModificationType(type)) {
          throw std::runtime_error("unknown modification type '" + type + "'");
        }
        for (const auto& phrase : phrases) {
          table.Add(phrase.get<std::string>(), type);
        }
      }
      lexicon.modifiers = std::move(table);
    }
    if (root.contains("color")) {
      lexicon.color = ParseTermSection(root["color"], "color");
    }
    if (root.contains("size")) {
      lexicon.size = ParseTermSection(root["size"], "size");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed lexicon file " + path + ": " +
                             e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("malformed lexicon file " + path + ": " +
                             e.what());
  }
  return lexicon;
}

std::optional<ModificationType> ClassifyModifier(
    std::span<const std::string> tokens, const Lexicon& lexicon) {
  const auto label = lexicon.modifiers.LongestMatch(tokens);
  if (!label) return std::nullopt;
  return ParseModificationType(*label);
}

std::optional<std::string> ExtractAttributeTerm(
    std::span<const std::string> tokens, Attribute attribute,
    const Lexicon& lexicon) {
  switch (attribute) {
    case Attribute::kColor:
      return lexicon.color.LongestMatch(tokens);
    case Attribute::kSize:
      return lexicon.size.LongestMatch(tokens);
    default:
      throw std::invalid_argument("attribute terms exist for color and size");
  }
}

}  // namespace spatialref
