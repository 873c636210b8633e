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

#include "spatialref/annotation.h"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <utility>

namespace spatialref {

const std::array<RelationKind, kRelationCount> kAllRelations = {
    RelationKind::kLeft,           RelationKind::kRight,
    RelationKind::kAbove,          RelationKind::kBelow,
    RelationKind::kHorizontal,     RelationKind::kVertical,
    RelationKind::kDiagonal,       RelationKind::kNear,
    RelationKind::kFar,            RelationKind::kAlone,
    RelationKind::kInterior,       RelationKind::kExterior,
    RelationKind::kLighter,        RelationKind::kLightest,
    RelationKind::kDarker,         RelationKind::kDarkest,
    RelationKind::kSameColor,      RelationKind::kDifferentColor,
    RelationKind::kSmaller,        RelationKind::kSmallest,
    RelationKind::kLarger,         RelationKind::kLargest,
    RelationKind::kSameSize,       RelationKind::kDifferentSize,
};

namespace {

constexpr std::array<std::string_view, kRelationCount> kRelationNames = {
    "left",       "right",          "above",    "below",
    "horizontal", "vertical",       "diagonal", "near",
    "far",        "alone",          "interior", "exterior",
    "lighter",    "lightest",       "darker",   "darkest",
    "same_color", "different_color", "smaller", "smallest",
    "larger",     "largest",        "same_size", "different_size",
};

constexpr std::array<std::string_view, 6> kModificationNames = {
    "subtlety", "extremity", "uncertainty", "certainty", "neutrality",
    "negation"};

}  // namespace

RelationCategory CategoryOf(RelationKind kind) {
  const int k = static_cast<int>(kind);
  if (k <= static_cast<int>(RelationKind::kDiagonal)) {
    return RelationCategory::kDirection;
  }
  if (k <= static_cast<int>(RelationKind::kAlone)) {
    return RelationCategory::kProximity;
  }
  if (k <= static_cast<int>(RelationKind::kExterior)) {
    return RelationCategory::kRegion;
  }
  if (k <= static_cast<int>(RelationKind::kDifferentColor)) {
    return RelationCategory::kColorComparison;
  }
  return RelationCategory::kSizeComparison;
}

std::string_view RelationName(RelationKind kind) {
  return kRelationNames[static_cast<int>(kind)];
}

std::string_view CategoryName(RelationCategory category) {
  switch (category) {
    case RelationCategory::kDirection:
      return "direction";
    case RelationCategory::kProximity:
      return "proximity";
    case RelationCategory::kRegion:
      return "region";
    case RelationCategory::kColorComparison:
      return "color";
    case RelationCategory::kSizeComparison:
      return "size";
  }
  return "";
}

std::optional<RelationKind> ParseRelationKind(std::string_view name) {
  for (int i = 0; i < kRelationCount; ++i) {
    if (kRelationNames[i] == name) return static_cast<RelationKind>(i);
  }
  return std::nullopt;
}

std::string_view ModificationName(ModificationType type) {
  return kModificationNames[static_cast<int>(type)];
}

std::optional<ModificationType> ParseModificationType(std::string_view name) {
  for (std::size_t i = 0; i < kModificationNames.size(); ++i) {
    if (kModificationNames[i] == name) return static_cast<ModificationType>(i);
  }
  return std::nullopt;
}

TokenSpan::TokenSpan(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()),
                 indices_.end());
}

TokenSpan TokenSpan::Range(int start, int end) {
  std::vector<int> indices;
  for (int i = start; i < end; ++i) indices.push_back(i);
  return TokenSpan(std::move(indices));
}

bool TokenSpan::contiguous() const {
  return indices_.empty() ||
         indices_.back() - indices_.front() + 1 ==
             static_cast<int>(indices_.size());
}

const Markable* DialogueDocument::FindMarkable(std::string_view id) const {
  for (const Markable& m : markables) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

const SpatialExpression* DialogueDocument::FindExpression(
    std::string_view id) const {
  for (const SpatialExpression& e : expressions) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const ModifierAnnotation* DialogueDocument::FindModifier(
    std::string_view id) const {
  for (const ModifierAnnotation& m : modifiers) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

Player DialogueDocument::SpeakerOf(const Markable& markable) const {
  return utterances.at(markable.utterance).speaker;
}

Player DialogueDocument::SpeakerOf(const SpatialExpression& expression) const {
  return utterances.at(expression.utterance).speaker;
}

namespace {

class Validator {
 public:
  Validator(const DialogueDocument& doc, const ScenePair* scene)
      : doc_(doc), scene_(scene) {}

  std::vector<Violation> Run() {
    CheckUtterances();
    CheckMarkables();
    CheckExpressions();
    CheckModifiers();
    return std::move(violations_);
  }

 private:
  void Report(std::string location, std::string rule, std::string message) {
    violations_.push_back(
        {std::move(location), std::move(rule), std::move(message)});
  }

  bool HasUtterance(int index) const {
    return index >= 0 && index < static_cast<int>(doc_.utterances.size()) &&
           doc_.utterances[index].index == index;
  }

  // Returns false when the utterance is missing (already reported).
  bool CheckSpan(const std::string& where, int utterance,
                 const TokenSpan& span) {
    if (!HasUtterance(utterance)) {
      Report(where, "missing-utterance",
             "utterance " + std::to_string(utterance) + " does not exist");
      return false;
    }
    if (span.empty()) {
      Report(where, "empty-span", "span has no tokens");
      return true;
    }
    const int length =
        static_cast<int>(doc_.utterances[utterance].tokens.size());
    if (span.first() < 0 || span.last() >= length) {
      Report(where, "span-outside-utterance",
             "span exceeds the " + std::to_string(length) +
                 " tokens of utterance " + std::to_string(utterance));
    }
    return true;
  }

  template <typename Item>
  void CheckUniqueIds(const std::vector<Item>& items, std::string_view kind) {
    std::set<std::string> seen;
    for (const Item& item : items) {
      if (item.id.empty()) {
        Report(std::string(kind), "empty-id", "missing id");
      } else if (!seen.insert(item.id).second) {
        Report(std::string(kind) + " " + item.id, "duplicate-id",
               "id used more than once");
      }
    }
  }

  void CheckUtterances() {
    for (std::size_t i = 0; i < doc_.utterances.size(); ++i) {
      if (doc_.utterances[i].index != static_cast<int>(i)) {
        Report("utterance " + std::to_string(i), "utterance-index",
               "index " + std::to_string(doc_.utterances[i].index) +
                   " is not contiguous from 0");
      }
    }
  }

  void CheckMarkables() {
    CheckUniqueIds(doc_.markables, "markable");
    if (scene_ != nullptr && scene_->scene_id != doc_.scene_id) {
      Report("document", "scene-mismatch",
             "document refers to scene '" + doc_.scene_id + "' but got '" +
                 scene_->scene_id + "'");
    }
    for (const Markable& m : doc_.markables) {
      const std::string where = "markable " + m.id;
      if (!CheckSpan(where, m.utterance, m.span)) continue;
      if (m.referents.size() > static_cast<std::size_t>(kEntitiesPerView)) {
        Report(where, "referent-count",
               std::to_string(m.referents.size()) + " referents exceed 7");
      }
      std::set<int> unique(m.referents.begin(), m.referents.end());
      if (unique.size() != m.referents.size()) {
        Report(where, "duplicate-referent", "a referent is listed twice");
      }
      if (scene_ != nullptr) {
        const View& view = scene_->ViewOf(doc_.utterances[m.utterance].speaker);
        for (int id : m.referents) {
          if (view.Find(id) == nullptr) {
            Report(where, "referent-not-in-view",
                   "entity " + std::to_string(id) +
                       " is not observable by the speaker");
          }
        }
      }
    }
  }

  void CheckArguments(const SpatialExpression& e, const std::string& where,
                      const std::vector<std::string>& arguments,
                      std::string_view role) {
    for (const std::string& id : arguments) {
      const Markable* m = doc_.FindMarkable(id);
      if (m == nullptr) {
        Report(where, "dangling-" + std::string(role),
               std::string(role) + " markable '" + id + "' does not exist");
      } else if (m->utterance > e.utterance) {
        Report(where, "later-argument",
               std::string(role) + " markable '" + id +
                   "' appears in a later utterance");
      }
    }
  }

  void CheckExpressions() {
    CheckUniqueIds(doc_.expressions, "expression");
    for (const SpatialExpression& e : doc_.expressions) {
      const std::string where = "expression " + e.id;
      CheckSpan(where, e.utterance, e.span);
      CheckArguments(e, where, e.subjects, "subject");
      CheckArguments(e, where, e.objects, "object");
      if (e.no_object && !e.objects.empty()) {
        Report(where, "no-object-with-objects",
               "no_object is set but objects are listed");
      }
      if (e.unannotatable && (!e.subjects.empty() || !e.objects.empty())) {
        Report(where, "unannotatable-with-arguments",
               "unannotatable expressions carry no arguments");
      }
      for (const std::string& id : e.modifiers) {
        const ModifierAnnotation* mod = doc_.FindModifier(id);
        if (mod == nullptr) {
          Report(where, "dangling-modifier",
                 "modifier '" + id + "' does not exist");
        } else if (mod->modificand != e.id) {
          Report(where, "modifier-link-mismatch",
                 "modifier '" + id + "' modifies '" + mod->modificand + "'");
        }
      }
    }
  }

  void CheckModifiers() {
    CheckUniqueIds(doc_.modifiers, "modifier");
    for (const ModifierAnnotation& mod : doc_.modifiers) {
      const std::string where = "modifier " + mod.id;
      CheckSpan(where, mod.utterance, mod.span);
      const SpatialExpression* e = doc_.FindExpression(mod.modificand);
      if (e == nullptr) {
        Report(where, "dangling-modificand",
               "expression '" + mod.modificand + "' does not exist");
      } else if (std::find(e->modifiers.begin(), e->modifiers.end(), mod.id) ==
                 e->modifiers.end()) {
        Report(where, "modifier-link-mismatch",
               "expression '" + e->id + "' does not list this modifier");
      }
    }
  }

  const DialogueDocument& doc_;
  const ScenePair* scene_;
  std::vector<Violation> violations_;
};

}  // namespace

std::vector<Violation> ValidateDocument(const DialogueDocument& doc,
                                        const ScenePair* scene) {
  return Validator(doc, scene).Run();
}

std::vector<SpatialExpression> FilterTestable(
    const DialogueDocument& doc,
    std::span<const SpatialExpression> expressions) {
  std::vector<SpatialExpression> kept;
  for (const SpatialExpression& e : expressions) {
    if (e.kind != ExpressionKind::kRelation || e.unannotatable) continue;
    bool negated = false;
    for (const std::string& id : e.modifiers) {
      const ModifierAnnotation* mod = doc.FindModifier(id);
      if (mod != nullptr && mod->type == ModificationType::kNegation) {
        negated = true;
      }
    }
    for (const ModifierAnnotation& mod : doc.modifiers) {
      if (mod.modificand == e.id && mod.type == ModificationType::kNegation) {
        negated = true;
      }
    }
    if (negated) continue;

    const Player speaker = doc.SpeakerOf(e);
    auto same_speaker = [&](const std::string& id) {
      const Markable* m = doc.FindMarkable(id);
      return m != nullptr && doc.SpeakerOf(*m) == speaker;
    };
    if (!std::all_of(e.subjects.begin(), e.subjects.end(), same_speaker) ||
        !std::all_of(e.objects.begin(), e.objects.end(), same_speaker)) {
      continue;
    }
    kept.push_back(e);
  }
  return kept;
}

std::string_view StrengthName(ModificationStrength strength) {
  switch (strength) {
    case ModificationStrength::kStrong:
      return "strong";
    case ModificationStrength::kNeutral:
      return "neutral";
    case ModificationStrength::kWeak:
      return "weak";
  }
  return "";
}

ModificationStrength ClassifyStrength(
    const SpatialExpression& expression,
    std::span<const ModifierAnnotation> modifiers) {
  // Distance from a modifier to the expression: utterance gap first, then
  // token gap between span starts.
  using Distance = std::pair<int, int>;
  std::optional<Distance> nearest_strong;
  std::optional<Distance> nearest_weak;
  const int anchor = expression.span.empty() ? 0 : expression.span.first();
  for (const ModifierAnnotation& mod : modifiers) {
    const bool attached =
        mod.modificand == expression.id ||
        std::find(expression.modifiers.begin(), expression.modifiers.end(),
                  mod.id) != expression.modifiers.end();
    if (!attached) continue;
    const int start = mod.span.empty() ? 0 : mod.span.first();
    const Distance d{std::abs(mod.utterance - expression.utterance),
                     std::abs(start - anchor)};
    switch (mod.type) {
      case ModificationType::kExtremity:
      case ModificationType::kCertainty:
        if (!nearest_strong || d < *nearest_strong) nearest_strong = d;
        break;
      case ModificationType::kSubtlety:
      case ModificationType::kUncertainty:
        if (!nearest_weak || d < *nearest_weak) nearest_weak = d;
        break;
      case ModificationType::kNeutrality:
      case ModificationType::kNegation:
        break;
    }
  }
  if (nearest_strong && nearest_weak) {
    return *nearest_strong < *nearest_weak ? ModificationStrength::kStrong
                                           : ModificationStrength::kWeak;
  }
  if (nearest_strong) return ModificationStrength::kStrong;
  if (nearest_weak) return ModificationStrength::kWeak;
  return ModificationStrength::kNeutral;
}

}  // namespace spatialref
