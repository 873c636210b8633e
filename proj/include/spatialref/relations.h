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

#ifndef SPATIALREF_RELATIONS_H_
#define SPATIALREF_RELATIONS_H_

#include <span>
#include <vector>

#include "spatialref/annotation.h"
#include "spatialref/scene.h"

namespace spatialref {

// Outcome of one canonical relation test. `valid` means the referents meet
// the minimal argument requirements; `satisfy` additionally requires the
// geometric or comparative condition. satisfy implies valid.
struct TestResult {
  bool satisfy = false;
  bool valid = false;

  friend bool operator==(const TestResult&, const TestResult&) = default;
};

struct RelationContext {
  std::vector<Entity> subjects;       // S
  std::vector<Entity> objects;        // O
  bool no_object = false;
  std::vector<Entity> view_entities;  // E, the speaker's observable entities
};

// Relation test thresholds, in view units.
inline constexpr double kHorizontalSlopeBound = 1.0 / 3.0;
inline constexpr double kVerticalSlopeBound = 3.0;
inline constexpr double kInteriorRadius = 120.0;
inline constexpr double kSameColorRange = 30.0;
// The color threshold scaled to the size range: 30 * 6 / 150.
inline constexpr double kSameSizeRange = 1.2;

// Dispatches to the category test for `kind`. Total over all 24 relations;
// degenerate inputs come back as (false, false).
TestResult Evaluate(RelationKind kind, const RelationContext& ctx);

// Each per-category test throws std::invalid_argument when `kind` belongs to
// a different category.
TestResult TestDirectionPair(RelationKind kind, const RelationContext& ctx);
TestResult TestAxisAlignment(RelationKind kind, const RelationContext& ctx);
TestResult TestProximity(RelationKind kind, const RelationContext& ctx);
TestResult TestRegion(RelationKind kind, const RelationContext& ctx);
TestResult TestColorComparison(RelationKind kind, const RelationContext& ctx);
TestResult TestSizeComparison(RelationKind kind, const RelationContext& ctx);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Least-squares slope of y on x. Returns +infinity when every x is equal.
// Throws std::invalid_argument for fewer than two points.
double FitSlope(std::span<const Point> points);

// S ∪ O with duplicates (same entity id) removed, subjects first.
std::vector<Entity> AllReferents(const RelationContext& ctx);

// Whether `kind` can be tested with objects removed. False for the pairwise
// comparatives (lighter, darker, smaller, larger).
bool HasNoObjectForm(RelationKind kind);

}  // namespace spatialref

#endif  // SPATIALREF_RELATIONS_H_
