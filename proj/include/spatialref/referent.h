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

#ifndef SPATIALREF_REFERENT_H_
#define SPATIALREF_REFERENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spatialref {

// Entity positions below are indices into the speaker's view, which is kept
// sorted by entity id, so index order is entity-id order.

struct MarkablePrediction {
  std::string markable_id;
  std::vector<double> scores;          // 7 referent probabilities
  std::optional<int> predicted_count;  // [0, 7]
  std::vector<int> decoded;            // entity positions, ascending
};

struct CountPrediction {
  std::string markable_id;
  int count = 0;
};

// Independent per-entity decisions: every position with score > 0.5.
std::vector<int> ThresholdPredict(std::span<const double> scores);

// The k highest-scoring positions, ties broken by lower position. Always
// returns exactly k positions, sorted ascending.
std::vector<int> TopKPredict(std::span<const double> scores, int k);

// round(sum of scores) with ties to even, clamped to [0, 7].
CountPrediction HeuristicCount(std::span<const double> scores,
                               std::string markable_id = {});

// Synthetic scores: 0.95 for gold positions and 0.05 elsewhere, each
// independently flipped with probability `flip_probability`. `decoded` is
// left empty.
MarkablePrediction PerturbGold(std::span<const int> gold_positions,
                               double flip_probability, std::uint64_t seed,
                               std::string markable_id = {});

}  // namespace spatialref

#endif  // SPATIALREF_REFERENT_H_
