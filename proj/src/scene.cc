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

#include "spatialref/scene.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "spatialref/random.h"

namespace spatialref {
namespace {

constexpr double kMinOffset = 40.0;
constexpr double kMaxOffset = 160.0;
constexpr double kRadiusSquared = kViewRadius * kViewRadius;

bool InsideDisk(double x, double y) { return x * x + y * y <= kRadiusSquared; }

// Rejection-samples a point of the A-frame disk accepted by `keep`.
template <typename Predicate>
std::array<double, 2> SamplePoint(Rng& rng, Predicate keep) {
  while (true) {
    const double x = rng.Uniform(-kViewRadius, kViewRadius);
    const double y = rng.Uniform(-kViewRadius, kViewRadius);
    if (InsideDisk(x, y) && keep(x, y)) return {x, y};
  }
}

void SortById(std::vector<Entity>& entities) {
  std::sort(entities.begin(), entities.end(),
            [](const Entity& a, const Entity& b) { return a.id < b.id; });
}

}  // namespace

std::string_view PlayerName(Player player) {
  return player == Player::kA ? "A" : "B";
}

Player ParsePlayer(std::string_view name) {
  if (name == "A") return Player::kA;
  if (name == "B") return Player::kB;
  throw std::invalid_argument("unknown player '" + std::string(name) + "'");
}

double AttributeValue(const Entity& entity, Attribute attribute) {
  switch (attribute) {
    case Attribute::kX:
      return entity.x;
    case Attribute::kY:
      return entity.y;
    case Attribute::kColor:
      return entity.color;
    case Attribute::kSize:
      return entity.size;
  }
  return 0.0;
}

const Entity* View::Find(int id) const {
  const int index = IndexOf(id);
  return index < 0 ? nullptr : &entities[index];
}

int View::IndexOf(int id) const {
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (entities[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

ScenePair GenerateScenePair(std::uint64_t seed, int shared_count) {
  if (shared_count < 4 || shared_count > 6) {
    throw std::invalid_argument("shared_count must be 4, 5 or 6, got " +
                                std::to_string(shared_count));
  }
  Rng rng(seed);
  ScenePair scene;
  scene.scene_id =
      "scene-" + std::to_string(seed) + "-" + std::to_string(shared_count);

  const double magnitude = rng.Uniform(kMinOffset, kMaxOffset);
  const double angle = rng.Uniform(0.0, 2.0 * std::numbers::pi);
  const double dx = magnitude * std::cos(angle);
  const double dy = magnitude * std::sin(angle);
  scene.world_offset = {dx, dy};

  const int exclusive = kEntitiesPerView - shared_count;
  std::vector<int> ids(shared_count + 2 * exclusive);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  for (int i = static_cast<int>(ids.size()) - 1; i > 0; --i) {
    std::swap(ids[i], ids[rng.UniformInt(0, i)]);
  }

  auto draw_attributes = [&rng](Entity& entity) {
    entity.color = rng.UniformInt(0, kColorLevels - 1);
    entity.size = rng.UniformInt(0, kSizeLevels - 1);
  };

  scene.view_a.player = Player::kA;
  scene.view_b.player = Player::kB;
  std::size_t next = 0;
  for (int i = 0; i < shared_count; ++i) {
    const auto p = SamplePoint(
        rng, [&](double x, double y) { return InsideDisk(x - dx, y - dy); });
    Entity a{ids[next++], p[0], p[1], 0, 0};
    draw_attributes(a);
    Entity b = a;
    b.x = a.x - dx;
    b.y = a.y - dy;
    scene.view_a.entities.push_back(a);
    scene.view_b.entities.push_back(b);
    scene.shared_ids.push_back(a.id);
  }
  for (int i = 0; i < exclusive; ++i) {
    const auto p = SamplePoint(
        rng, [&](double x, double y) { return !InsideDisk(x - dx, y - dy); });
    Entity a{ids[next++], p[0], p[1], 0, 0};
    draw_attributes(a);
    scene.view_a.entities.push_back(a);
  }
  for (int i = 0; i < exclusive; ++i) {
    // Sampled directly in the B frame; must fall outside A's disk.
    const auto p = SamplePoint(
        rng, [&](double x, double y) { return !InsideDisk(x + dx, y + dy); });
    Entity b{ids[next++], p[0], p[1], 0, 0};
    draw_attributes(b);
    scene.view_b.entities.push_back(b);
  }
  SortById(scene.view_a.entities);
  SortById(scene.view_b.entities);
  std::sort(scene.shared_ids.begin(), scene.shared_ids.end());
  return scene;
}

std::vector<std::string> CheckScenePair(const ScenePair& scene) {
  std::vector<std::string> problems;
  const double dx = scene.world_offset[0];
  const double dy = scene.world_offset[1];
  const std::set<int> shared(scene.shared_ids.begin(), scene.shared_ids.end());
  if (shared.size() != scene.shared_ids.size()) {
    problems.push_back("shared_ids contains duplicates");
  }
  if (shared.size() < 4 || shared.size() > 6) {
    problems.push_back("shared count " + std::to_string(shared.size()) +
                       " outside {4,5,6}");
  }

  for (const View* view : {&scene.view_a, &scene.view_b}) {
    const std::string name(PlayerName(view->player));
    if (view->entities.size() != kEntitiesPerView) {
      problems.push_back("view " + name + " has " +
                         std::to_string(view->entities.size()) + " entities");
    }
    std::set<int> ids;
    for (const Entity& e : view->entities) {
      const std::string where = "view " + name + " entity " +
                                std::to_string(e.id);
      if (!ids.insert(e.id).second) problems.push_back(where + " duplicated");
      if (!InsideDisk(e.x, e.y)) problems.push_back(where + " outside view");
      if (e.color < 0 || e.color >= kColorLevels) {
        problems.push_back(where + " color out of range");
      }
      if (e.size < 0 || e.size >= kSizeLevels) {
        problems.push_back(where + " size out of range");
      }
    }
  }
  if (scene.view_a.player != Player::kA || scene.view_b.player != Player::kB) {
    problems.push_back("views must belong to players A and B");
  }

  for (const Entity& a : scene.view_a.entities) {
    const Entity* b = scene.view_b.Find(a.id);
    const bool is_shared = shared.count(a.id) > 0;
    if (is_shared) {
      if (b == nullptr) {
        problems.push_back("shared entity " + std::to_string(a.id) +
                           " missing from view B");
        continue;
      }
      if (b->color != a.color || b->size != a.size) {
        problems.push_back("shared entity " + std::to_string(a.id) +
                           " attributes differ across views");
      }
      if (b->x != a.x - dx || b->y != a.y - dy) {
        problems.push_back("shared entity " + std::to_string(a.id) +
                           " not related by world_offset");
      }
    } else {
      if (b != nullptr) {
        problems.push_back("entity " + std::to_string(a.id) +
                           " appears in both views but is not shared");
      }
      if (InsideDisk(a.x - dx, a.y - dy)) {
        problems.push_back("exclusive entity " + std::to_string(a.id) +
                           " of view A lies inside view B");
      }
    }
  }
  for (const Entity& b : scene.view_b.entities) {
    if (shared.count(b.id) > 0) {
      if (scene.view_a.Find(b.id) == nullptr) {
        problems.push_back("shared entity " + std::to_string(b.id) +
                           " missing from view A");
      }
    } else if (InsideDisk(b.x + dx, b.y + dy)) {
      problems.push_back("exclusive entity " + std::to_string(b.id) +
                         " of view B lies inside view A");
    }
  }
  return problems;
}

double Distance(const Entity& a, const Entity& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

// Terms are summed in sorted order so the result does not depend on the
// order of the input list.
double SortedMean(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total / static_cast<double>(terms.size());
}

}  // namespace

double PairwiseMeanDistance(std::span<const Entity> entities) {
  if (entities.size() < 2) {
    throw std::invalid_argument(
        "pairwise distance needs at least 2 entities");
  }
  std::vector<double> distances;
  distances.reserve(entities.size() * (entities.size() - 1) / 2);
  for (std::size_t i = 0; i < entities.size(); ++i) {
    for (std::size_t j = i + 1; j < entities.size(); ++j) {
      distances.push_back(Distance(entities[i], entities[j]));
    }
  }
  return SortedMean(std::move(distances));
}

double MeanAttribute(std::span<const Entity> entities, Attribute attribute) {
  if (entities.empty()) {
    throw std::invalid_argument("mean of an empty entity list");
  }
  std::vector<double> values;
  values.reserve(entities.size());
  for (const Entity& e : entities) values.push_back(AttributeValue(e, attribute));
  return SortedMean(std::move(values));
}

}  // namespace spatialref
