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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>
#include "spatialref/io.h"
#include "spatialref/random.h"

namespace spatialref {
namespace {

Entity At(int id, double x, double y) { return Entity{id, x, y, 0, 0}; }

TEST(GenerateScenePairTest, HasRequestedOverlap) {
  const ScenePair scene = GenerateScenePair(1, 4);
  EXPECT_EQ(scene.shared_ids.size(), 4u);
  EXPECT_EQ(scene.view_a.entities.size(), 7u);
  EXPECT_EQ(scene.view_b.entities.size(), 7u);
  EXPECT_TRUE(CheckScenePair(scene).empty());
}

TEST(GenerateScenePairTest, IsDeterministic) {
  EXPECT_EQ(GenerateScenePair(1, 4), GenerateScenePair(1, 4));
  EXPECT_EQ(SceneToJson(GenerateScenePair(9, 6)).dump(),
            SceneToJson(GenerateScenePair(9, 6)).dump());
  EXPECT_NE(GenerateScenePair(1, 4), GenerateScenePair(2, 4));
}

TEST(GenerateScenePairTest, RejectsOverlapOutsideFourToSix) {
  EXPECT_THROW(GenerateScenePair(1, 7), std::invalid_argument);
  EXPECT_THROW(GenerateScenePair(1, 3), std::invalid_argument);
}

TEST(GenerateScenePairTest, SharedEntitiesAreTranslatedByOffset) {
  const ScenePair scene = GenerateScenePair(42, 5);
  const double offset = std::hypot(scene.world_offset[0], scene.world_offset[1]);
  EXPECT_GE(offset, 40.0);
  EXPECT_LE(offset, 160.0);
  for (int id : scene.shared_ids) {
    const Entity* a = scene.view_a.Find(id);
    const Entity* b = scene.view_b.Find(id);
    ASSERT_NE(a, nullptr);
    ASSERT_NE(b, nullptr);
    EXPECT_DOUBLE_EQ(b->x, a->x - scene.world_offset[0]);
    EXPECT_DOUBLE_EQ(b->y, a->y - scene.world_offset[1]);
    EXPECT_EQ(a->color, b->color);
    EXPECT_EQ(a->size, b->size);
  }
}

TEST(GenerateScenePairTest, InvariantsHoldOverTenThousandSeeds) {
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const int shared = 4 + static_cast<int>(seed % 3);
    const ScenePair scene = GenerateScenePair(seed, shared);
    const std::vector<std::string> problems = CheckScenePair(scene);
    if (!problems.empty() && failures++ < 3) {
      ADD_FAILURE() << "seed " << seed << ": " << problems.front();
    }
    if (static_cast<int>(scene.shared_ids.size()) != shared) ++failures;
  }
  EXPECT_EQ(failures, 0);
}

TEST(CheckScenePairTest, ReportsBrokenInvariants) {
  ScenePair scene = GenerateScenePair(3, 4);
  scene.view_a.entities[0].color = 150;
  scene.view_b.entities[1].x = 500;
  EXPECT_GE(CheckScenePair(scene).size(), 2u);

  ScenePair shifted = GenerateScenePair(3, 4);
  const int shared = shifted.shared_ids.front();
  for (Entity& e : shifted.view_b.entities) {
    if (e.id == shared) e.x += 1.0;
  }
  EXPECT_FALSE(CheckScenePair(shifted).empty());

  ScenePair missing = GenerateScenePair(3, 4);
  missing.view_b.entities.pop_back();
  EXPECT_FALSE(CheckScenePair(missing).empty());
}

TEST(ViewTest, FindAndIndexOf) {
  const ScenePair scene = GenerateScenePair(5, 4);
  const View& view = scene.view_a;
  const Entity& third = view.entities[2];
  EXPECT_EQ(view.Find(third.id), &third);
  EXPECT_EQ(view.IndexOf(third.id), 2);
  EXPECT_EQ(view.Find(-1), nullptr);
  EXPECT_EQ(view.IndexOf(-1), -1);
}

TEST(PlayerTest, ParsesNames) {
  EXPECT_EQ(ParsePlayer("A"), Player::kA);
  EXPECT_EQ(ParsePlayer("B"), Player::kB);
  EXPECT_EQ(PlayerName(Player::kB), "B");
  EXPECT_THROW(ParsePlayer("C"), std::invalid_argument);
}

TEST(PairwiseMeanDistanceTest, Examples) {
  const std::vector<Entity> two = {At(0, 0, 0), At(1, 10, 0)};
  EXPECT_DOUBLE_EQ(PairwiseMeanDistance(two), 10.0);
  // Collinear at 0, d, 2d: pairs d, d, 2d average to 4d/3.
  const double d = 30.0;
  const std::vector<Entity> line = {At(0, 0, 0), At(1, d, 0), At(2, 2 * d, 0)};
  EXPECT_NEAR(PairwiseMeanDistance(line), 4.0 * d / 3.0, 1e-12);
  const std::vector<Entity> one = {At(0, 0, 0)};
  EXPECT_THROW(PairwiseMeanDistance(one), std::invalid_argument);
}

TEST(PairwiseMeanDistanceTest, RigidMotionAndScaling) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Entity> es;
    for (int i = 0; i < 7; ++i) {
      es.push_back(At(i, rng.Uniform(-150, 150), rng.Uniform(-150, 150)));
    }
    const double base = PairwiseMeanDistance(es);
    const double angle = rng.Uniform(0, 6.283);
    const double dx = rng.Uniform(-50, 50);
    const double k = rng.Uniform(0.1, 10);
    std::vector<Entity> moved = es;
    std::vector<Entity> scaled = es;
    for (std::size_t i = 0; i < es.size(); ++i) {
      moved[i].x = std::cos(angle) * es[i].x - std::sin(angle) * es[i].y + dx;
      moved[i].y = std::sin(angle) * es[i].x + std::cos(angle) * es[i].y - dx;
      scaled[i].x *= k;
      scaled[i].y *= k;
    }
    EXPECT_NEAR(PairwiseMeanDistance(moved), base, 1e-9);
    EXPECT_NEAR(PairwiseMeanDistance(scaled), k * base, 1e-9 * k);
  }
}

TEST(PairwiseMeanDistanceTest, IndependentOfInputOrder) {
  std::vector<Entity> es = {At(0, 0.1, 0.7), At(1, 33.3, -2.9),
                            At(2, -71.7, 9.1), At(3, 12.5, 140.2)};
  const double forward = PairwiseMeanDistance(es);
  std::reverse(es.begin(), es.end());
  EXPECT_EQ(PairwiseMeanDistance(es), forward);
}

TEST(MeanAttributeTest, Examples) {
  const std::vector<Entity> single = {Entity{0, -10, 4, 33, 2}};
  EXPECT_DOUBLE_EQ(MeanAttribute(single, Attribute::kX), -10.0);
  EXPECT_DOUBLE_EQ(MeanAttribute(single, Attribute::kY), 4.0);
  EXPECT_DOUBLE_EQ(MeanAttribute(single, Attribute::kColor), 33.0);
  EXPECT_DOUBLE_EQ(MeanAttribute(single, Attribute::kSize), 2.0);
  const std::vector<Entity> pair = {At(0, 0, 0), At(1, 10, 0)};
  EXPECT_DOUBLE_EQ(MeanAttribute(pair, Attribute::kX), 5.0);
  EXPECT_THROW(MeanAttribute(std::vector<Entity>{}, Attribute::kX),
               std::invalid_argument);
}

TEST(RngTest, SeededStreamsRepeat) {
  Rng a(11);
  Rng b(11);
  for (int i = 0; i < 100; ++i) {
    const double u = a.Uniform();
    EXPECT_EQ(u, b.Uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const int k = a.UniformInt(-3, 3);
    EXPECT_EQ(k, b.UniformInt(-3, 3));
    EXPECT_GE(k, -3);
    EXPECT_LE(k, 3);
  }
  EXPECT_NE(DeriveSeed(1, "x"), DeriveSeed(1, "y"));
  EXPECT_EQ(DeriveSeed(1, "x"), DeriveSeed(1, "x"));
}

TEST(StableHashTest, MatchesFnv1aReferenceValues) {
  // FNV-1a 64 reference test vectors.
  EXPECT_EQ(StableHash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(StableHash("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(StableHash("foobar"), 0x85944171f73967e8ULL);
}

}  // namespace
}  // namespace spatialref
