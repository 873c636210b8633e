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

#ifndef SPATIALREF_SCENE_H_
#define SPATIALREF_SCENE_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spatialref {

// View geometry. Each view is a disk of radius kViewRadius centered at the
// origin with y increasing upward.
inline constexpr double kViewRadius = 200.0;
inline constexpr int kColorLevels = 150;  // 0 is darkest.
inline constexpr int kSizeLevels = 6;
inline constexpr int kEntitiesPerView = 7;

enum class Player { kA, kB };

std::string_view PlayerName(Player player);
// Throws std::invalid_argument for anything other than "A" or "B".
Player ParsePlayer(std::string_view name);

struct Entity {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  int color = 0;
  int size = 0;

  friend bool operator==(const Entity&, const Entity&) = default;
};

enum class Attribute { kX, kY, kColor, kSize };

double AttributeValue(const Entity& entity, Attribute attribute);

struct View {
  Player player = Player::kA;
  // Sorted by ascending id.
  std::vector<Entity> entities;

  // Returns nullptr when the id is not observable in this view.
  const Entity* Find(int id) const;
  // Position of the entity in `entities`, or -1.
  int IndexOf(int id) const;

  friend bool operator==(const View&, const View&) = default;
};

struct ScenePair {
  std::string scene_id;
  View view_a;
  View view_b;
  std::vector<int> shared_ids;  // sorted
  // Translation from the A frame to the B frame: p_b = p_a - world_offset.
  std::array<double, 2> world_offset = {0.0, 0.0};

  const View& ViewOf(Player player) const {
    return player == Player::kA ? view_a : view_b;
  }

  friend bool operator==(const ScenePair&, const ScenePair&) = default;
};

// Draws a scene pair with `shared_count` entities visible to both players.
// The result is a pure function of (seed, shared_count). Throws
// std::invalid_argument unless shared_count is 4, 5 or 6.
ScenePair GenerateScenePair(std::uint64_t seed, int shared_count);

// Lists every broken ScenePair invariant; empty when the pair is well formed.
std::vector<std::string> CheckScenePair(const ScenePair& scene);

double Distance(const Entity& a, const Entity& b);

// Mean Euclidean distance over all unordered pairs. Requires >= 2 entities.
double PairwiseMeanDistance(std::span<const Entity> entities);

// Requires a non-empty list.
double MeanAttribute(std::span<const Entity> entities, Attribute attribute);

}  // namespace spatialref

#endif  // SPATIALREF_SCENE_H_
