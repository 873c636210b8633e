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

#ifndef SPATIALREF_ANNOTATION_H_
#define SPATIALREF_ANNOTATION_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spatialref/scene.h"

namespace spatialref {

enum class RelationCategory {
  kDirection,
  kProximity,
  kRegion,
  kColorComparison,
  kSizeComparison,
};

// The 24 canonical relations, declared in reporting order.
enum class RelationKind {
  kLeft,
  kRight,
  kAbove,
  kBelow,
  kHorizontal,
  kVertical,
  kDiagonal,
  kNear,
  kFar,
  kAlone,
  kInterior,
  kExterior,
  kLighter,
  kLightest,
  kDarker,
  kDarkest,
  kSameColor,
  kDifferentColor,
  kSmaller,
  kSmallest,
  kLarger,
  kLargest,
  kSameSize,
  kDifferentSize,
};

inline constexpr int kRelationCount = 24;
extern const std::array<RelationKind, kRelationCount> kAllRelations;
inline constexpr std::array<RelationCategory, 5> kAllCategories = {
    RelationCategory::kDirection, RelationCategory::kProximity,
    RelationCategory::kRegion, RelationCategory::kColorComparison,
    RelationCategory::kSizeComparison};

RelationCategory CategoryOf(RelationKind kind);
std::string_view RelationName(RelationKind kind);
std::string_view CategoryName(RelationCategory category);
std::optional<RelationKind> ParseRelationKind(std::string_view name);

enum class ModificationType {
  kSubtlety,
  kExtremity,
  kUncertainty,
  kCertainty,
  kNeutrality,
  kNegation,
};

inline constexpr std::array<ModificationType, 6> kAllModificationTypes = {
    ModificationType::kSubtlety,    ModificationType::kExtremity,
    ModificationType::kUncertainty, ModificationType::kCertainty,
    ModificationType::kNeutrality,  ModificationType::kNegation};

std::string_view ModificationName(ModificationType type);
std::optional<ModificationType> ParseModificationType(std::string_view name);

// A set of token positions inside one utterance, kept sorted and unique.
// Contiguous spans are the common case; gaps are allowed.
class TokenSpan {
 public:
  TokenSpan() = default;
  explicit TokenSpan(std::vector<int> indices);
  // Half-open [start, end).
  static TokenSpan Range(int start, int end);

  const std::vector<int>& indices() const { return indices_; }
  bool empty() const { return indices_.empty(); }
  int first() const { return indices_.front(); }
  int last() const { return indices_.back(); }
  bool contiguous() const;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;

 private:
  std::vector<int> indices_;
};

struct Utterance {
  int index = 0;
  Player speaker = Player::kA;
  std::vector<std::string> tokens;
};

struct Markable {
  std::string id;
  int utterance = 0;
  TokenSpan span;
  std::vector<int> referents;  // gold entity ids
};

enum class ExpressionKind { kAttribute, kRelation };

struct SpatialExpression {
  std::string id;
  ExpressionKind kind = ExpressionKind::kRelation;
  int utterance = 0;
  TokenSpan span;
  std::vector<std::string> subjects;
  std::vector<std::string> objects;
  bool no_object = false;
  bool unannotatable = false;
  std::vector<RelationKind> canonical;
  std::vector<std::string> modifiers;
};

struct ModifierAnnotation {
  std::string id;
  int utterance = 0;
  TokenSpan span;
  ModificationType type = ModificationType::kNeutrality;
  std::string modificand;
};

struct DialogueDocument {
  std::string dialogue_id;
  std::string scene_id;
  std::vector<Utterance> utterances;
  std::vector<Markable> markables;
  std::vector<SpatialExpression> expressions;
  std::vector<ModifierAnnotation> modifiers;

  const Markable* FindMarkable(std::string_view id) const;
  const SpatialExpression* FindExpression(std::string_view id) const;
  const ModifierAnnotation* FindModifier(std::string_view id) const;
  // Speaker of the utterance holding the markable. Requires a valid document.
  Player SpeakerOf(const Markable& markable) const;
  Player SpeakerOf(const SpatialExpression& expression) const;
};

struct Violation {
  std::string location;  // e.g. "expression e3"
  std::string rule;      // stable rule id, e.g. "dangling-subject"
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Checks every document invariant and reports all violations found. When a
// scene is given, gold referents are also checked against the speaker's view.
std::vector<Violation> ValidateDocument(const DialogueDocument& doc,
                                        const ScenePair* scene = nullptr);

// Keeps relation expressions that can be tested against referents: not
// unannotatable, not negated, and with every argument produced by the
// expression's own speaker. Expects a validated document.
std::vector<SpatialExpression> FilterTestable(
    const DialogueDocument& doc,
    std::span<const SpatialExpression> expressions);

enum class ModificationStrength { kStrong, kNeutral, kWeak };

std::string_view StrengthName(ModificationStrength strength);

ModificationStrength ClassifyStrength(
    const SpatialExpression& expression,
    std::span<const ModifierAnnotation> modifiers);

}  // namespace spatialref

#endif  // SPATIALREF_ANNOTATION_H_
