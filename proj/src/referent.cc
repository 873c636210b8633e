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

#include "spatialref/referent.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spatialref/random.h"
#include "spatialref/scene.h"

namespace spatialref {
namespace {

constexpr double kDecisionThreshold = 0.5;
constexpr double kReferentScore = 0.95;
constexpr double kDistractorScore = 0.05;

void RequireSevenScores(std::span<const double> scores) {
  if (scores.size() != static_cast<std::size_t>(kEntitiesPerView)) {
    throw std::invalid_argument("expected 7 scores, got " +
                                std::to_string(scores.size()));
  }
}

}  // namespace

std::vector<int> ThresholdPredict(std::span<const double> scores) {
  RequireSevenScores(scores);
  std::vector<int> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > kDecisionThreshold) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> TopKPredict(std::span<const double> scores, int k) {
  RequireSevenScores(scores);
  if (k < 0 || k > kEntitiesPerView) {
    throw std::invalid_argument("k must be in [0, 7], got " +
                                std::to_string(k));
  }
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

CountPrediction HeuristicCount(std::span<const double> scores,
                               std::string markable_id) {
  const double total = std::accumulate(scores.begin(), scores.end(), 0.0);
  // nearbyint honours the default round-half-to-even mode.
  const double rounded = std::nearbyint(total);
  const int count = static_cast<int>(
      std::clamp(rounded, 0.0, static_cast<double>(kEntitiesPerView)));
  return {std::move(markable_id), count};
}

MarkablePrediction PerturbGold(std::span<const int> gold_positions,
                               double flip_probability, std::uint64_t seed,
                               std::string markable_id) {
  if (!(flip_probability >= 0.0 && flip_probability <= 1.0)) {
    throw std::invalid_argument("flip probability must be in [0, 1]");
  }
  Rng rng(seed);
  MarkablePrediction prediction;
  prediction.markable_id = std::move(markable_id);
  prediction.scores.assign(kEntitiesPerView, kDistractorScore);
  for (int position : gold_positions) {
    if (position < 0 || position >= kEntitiesPerView) {
      throw std::invalid_argument("gold position out of range");
    }
    prediction.scores[position] = kReferentScore;
  }
  for (double& score : prediction.scores) {
    if (rng.Bernoulli(flip_probability)) {
      score = score == kReferentScore ? kDistractorScore : kReferentScore;
    }
  }
  return prediction;
}

}  // namespace spatialref
