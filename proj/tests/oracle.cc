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

#include "oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>

#include "spatialref/metrics.h"
#include "spatialref/random.h"
#include "spatialref/referent.h"

namespace spatialref::testing {
namespace {

// The union of subjects and objects as a set keyed by id.
std::vector<Entity> ReferentSet(const RelationContext& ctx) {
  std::map<int, Entity> by_id;
  for (const Entity& e : ctx.subjects) by_id[e.id] = e;
  for (const Entity& e : ctx.objects) by_id[e.id] = e;
  std::vector<Entity> out;
  for (const auto& [id, e] : by_id) out.push_back(e);
  return out;
}

double MeanX(const std::vector<Entity>& es) {
  double sum = 0.0;
  for (const Entity& e : es) sum += e.x;
  return sum / es.size();
}

double MeanCombinationDistance(const std::vector<Entity>& es) {
  double sum = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double dx = es[i].x - es[j].x;
      const double dy = es[i].y - es[j].y;
      sum += std::sqrt(dx * dx + dy * dy);
      ++pairs;
    }
  }
  return sum / pairs;
}

TestResult Left(const RelationContext& ctx) {
  TestResult r;
  if (ctx.no_object) {
    r.valid = !ctx.subjects.empty();
    r.satisfy = r.valid && MeanX(ctx.subjects) < 0;
  } else {
    r.valid = !ctx.subjects.empty() && !ctx.objects.empty();
    r.satisfy = r.valid && MeanX(ctx.subjects) < MeanX(ctx.objects);
  }
  return r;
}

TestResult Horizontal(const RelationContext& ctx) {
  const std::vector<Entity> a = ReferentSet(ctx);
  TestResult r;
  r.valid = a.size() > 1;
  if (!r.valid) return r;
  // Closed-form simple regression from raw sums.
  const double n = a.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Entity& e : a) {
    sx += e.x;
    sy += e.y;
    sxx += e.x * e.x;
    sxy += e.x * e.y;
  }
  const double denominator = n * sxx - sx * sx;
  bool all_x_equal = true;
  for (const Entity& e : a) all_x_equal = all_x_equal && e.x == a[0].x;
  if (all_x_equal) return r;  // no finite coefficient
  const double coef = (n * sxy - sx * sy) / denominator;
  r.satisfy = std::fabs(coef) < 1.0 / 3.0;
  return r;
}

TestResult Near(const RelationContext& ctx) {
  std::vector<Entity> a = ReferentSet(ctx);
  std::vector<Entity> e = ctx.view_entities;
  std::sort(e.begin(), e.end(),
            [](const Entity& l, const Entity& r) { return l.id < r.id; });
  TestResult r;
  r.valid = a.size() > 1;
  r.satisfy = r.valid && e.size() > 1 &&
              MeanCombinationDistance(a) < MeanCombinationDistance(e);
  return r;
}

TestResult Interior(const RelationContext& ctx) {
  TestResult r;
  if (ctx.no_object) {
    r.valid = !ctx.subjects.empty();
    r.satisfy = r.valid;
    for (const Entity& s : ctx.subjects) {
      if (std::sqrt(s.x * s.x + s.y * s.y) > 120) r.satisfy = false;
    }
    return r;
  }
  r.valid = !ctx.subjects.empty() && ctx.objects.size() > 1;
  r.satisfy = r.valid;
  if (!r.valid) return r;
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  for (const Entity& o : ctx.objects) {
    min_x = std::min(min_x, o.x);
    max_x = std::max(max_x, o.x);
    min_y = std::min(min_y, o.y);
    max_y = std::max(max_y, o.y);
  }
  for (const Entity& s : ctx.subjects) {
    if ((s.x < min_x || max_x < s.x) && (s.y < min_y || max_y < s.y)) {
      r.satisfy = false;
    }
  }
  return r;
}

TestResult SameColor(const RelationContext& ctx) {
  const std::vector<Entity> a = ReferentSet(ctx);
  TestResult r;
  r.valid = a.size() > 1;
  if (!r.valid) return r;
  int lo = 1000, hi = -1000;
  for (const Entity& e : a) {
    lo = std::min(lo, e.color);
    hi = std::max(hi, e.color);
  }
  r.satisfy = hi - lo < 30;
  return r;
}

template <typename Fn>
RelationContext MapPoints(RelationContext ctx, Fn fn) {
  for (auto* group : {&ctx.subjects, &ctx.objects, &ctx.view_entities}) {
    for (Entity& e : *group) fn(e);
  }
  return ctx;
}

std::string Describe(RelationKind kind, std::uint64_t seed, const char* what) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), "%s: relation %s, context seed %llu",
                what, std::string(RelationName(kind)).c_str(),
                static_cast<unsigned long long>(seed));
  return buffer;
}

template <typename Body>
FuzzReport ForEachContext(std::uint64_t seed, int contexts, Body body) {
  FuzzReport report;
  for (int i = 0; i < contexts; ++i) {
    const std::uint64_t context_seed =
        DeriveSeed(seed, "context/" + std::to_string(i));
    body(RandomContext(context_seed), context_seed, report);
  }
  return report;
}

bool RotationInvariantKind(RelationKind kind) {
  switch (CategoryOf(kind)) {
    case RelationCategory::kProximity:
    case RelationCategory::kColorComparison:
    case RelationCategory::kSizeComparison:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::optional<TestResult> OracleEvaluate(RelationKind kind,
                                         const RelationContext& ctx) {
  switch (kind) {
    case RelationKind::kLeft:
      return Left(ctx);
    case RelationKind::kHorizontal:
      return Horizontal(ctx);
    case RelationKind::kNear:
      return Near(ctx);
    case RelationKind::kInterior:
      return Interior(ctx);
    case RelationKind::kSameColor:
      return SameColor(ctx);
    default:
      return std::nullopt;
  }
}

RelationContext RandomContext(std::uint64_t seed) {
  Rng rng(seed);
  RelationContext ctx;
  for (int id = 0; id < kEntitiesPerView; ++id) {
    Entity e;
    e.id = id;
    do {
      e.x = rng.Uniform(-kViewRadius, kViewRadius);
      e.y = rng.Uniform(-kViewRadius, kViewRadius);
    } while (std::hypot(e.x, e.y) > kViewRadius);
    e.color = rng.UniformInt(0, kColorLevels - 1);
    e.size = rng.UniformInt(0, kSizeLevels - 1);
    ctx.view_entities.push_back(e);
  }
  // A few contexts stack entities on one vertical line.
  if (rng.Bernoulli(0.05)) {
    const double x = rng.Uniform(-100, 100);
    for (Entity& e : ctx.view_entities) e.x = x;
  }
  for (const Entity& e : ctx.view_entities) {
    if (rng.Bernoulli(0.3)) ctx.subjects.push_back(e);
    if (rng.Bernoulli(0.3)) ctx.objects.push_back(e);
  }
  if (rng.Bernoulli(0.3)) {
    ctx.no_object = true;
    ctx.objects.clear();
  }
  return ctx;
}

RelationContext MirrorX(RelationContext ctx) {
  return MapPoints(std::move(ctx), [](Entity& e) { e.x = -e.x; });
}

RelationContext MirrorY(RelationContext ctx) {
  return MapPoints(std::move(ctx), [](Entity& e) { e.y = -e.y; });
}

RelationContext Rotate(RelationContext ctx, double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return MapPoints(std::move(ctx), [&](Entity& e) {
    const double x = e.x;
    e.x = c * x - s * e.y;
    e.y = s * x + c * e.y;
  });
}

RelationContext Scale(RelationContext ctx, double factor) {
  return MapPoints(std::move(ctx), [&](Entity& e) {
    e.x *= factor;
    e.y *= factor;
  });
}

FuzzReport CheckSatisfyImpliesValid(std::uint64_t seed, int contexts) {
  return ForEachContext(seed, contexts, [](const RelationContext& ctx,
                                           std::uint64_t s, FuzzReport& r) {
    for (RelationKind kind : kAllRelations) {
      ++r.checks;
      const TestResult result = Evaluate(kind, ctx);
      if (result.satisfy && !result.valid) {
        r.Fail(Describe(kind, s, "satisfy without valid"));
      }
    }
  });
}

FuzzReport CheckMirrorSymmetry(std::uint64_t seed, int contexts) {
  return ForEachContext(seed, contexts, [](const RelationContext& ctx,
                                           std::uint64_t s, FuzzReport& r) {
    const RelationContext mx = MirrorX(ctx);
    const RelationContext my = MirrorY(ctx);
    const std::pair<RelationKind, RelationKind> pairs[] = {
        {RelationKind::kLeft, RelationKind::kRight},
        {RelationKind::kRight, RelationKind::kLeft}};
    for (const auto& [kind, mirrored] : pairs) {
      ++r.checks;
      if (Evaluate(kind, ctx) != Evaluate(mirrored, mx)) {
        r.Fail(Describe(kind, s, "x-mirror mismatch"));
      }
    }
    const std::pair<RelationKind, RelationKind> vertical[] = {
        {RelationKind::kAbove, RelationKind::kBelow},
        {RelationKind::kBelow, RelationKind::kAbove}};
    for (const auto& [kind, mirrored] : vertical) {
      ++r.checks;
      if (Evaluate(kind, ctx) != Evaluate(mirrored, my)) {
        r.Fail(Describe(kind, s, "y-mirror mismatch"));
      }
    }
  });
}

FuzzReport CheckRotationInvariance(std::uint64_t seed, int contexts) {
  return ForEachContext(seed, contexts, [](const RelationContext& ctx,
                                           std::uint64_t s, FuzzReport& r) {
    Rng rng(s);
    const RelationContext rotated =
        Rotate(ctx, rng.Uniform(0.0, 2.0 * std::numbers::pi));
    for (RelationKind kind : kAllRelations) {
      if (!RotationInvariantKind(kind)) continue;
      ++r.checks;
      if (Evaluate(kind, ctx) != Evaluate(kind, rotated)) {
        r.Fail(Describe(kind, s, "rotation changed the result"));
      }
    }
  });
}

FuzzReport CheckSlopeBands(std::uint64_t seed, int contexts) {
  return ForEachContext(seed, contexts, [](const RelationContext& ctx,
                                           std::uint64_t s, FuzzReport& r) {
    const TestResult h = Evaluate(RelationKind::kHorizontal, ctx);
    const TestResult v = Evaluate(RelationKind::kVertical, ctx);
    const TestResult d = Evaluate(RelationKind::kDiagonal, ctx);
    if (!h.valid) return;
    ++r.checks;
    const int holding = h.satisfy + v.satisfy + d.satisfy;
    if (holding != 1) {
      r.Fail(Describe(RelationKind::kHorizontal, s,
                      "slope bands do not partition"));
    }
  });
}

FuzzReport CheckSameDifferentComplement(std::uint64_t seed, int contexts) {
  return ForEachContext(seed, contexts, [](const RelationContext& ctx,
                                           std::uint64_t s, FuzzReport& r) {
    const std::pair<RelationKind, RelationKind> pairs[] = {
        {RelationKind::kSameColor, RelationKind::kDifferentColor},
        {RelationKind::kSameSize, RelationKind::kDifferentSize}};
    for (const auto& [same, different] : pairs) {
      const TestResult a = Evaluate(same, ctx);
      const TestResult b = Evaluate(different, ctx);
      ++r.checks;
      if (a.valid != b.valid || (a.valid && a.satisfy == b.satisfy)) {
        r.Fail(Describe(same, s, "same/different not complementary"));
      }
    }
  });
}

FuzzReport CheckScaleInvariance(std::uint64_t seed, int contexts) {
  return ForEachContext(seed, contexts, [](const RelationContext& ctx,
                                           std::uint64_t s, FuzzReport& r) {
    Rng rng(s);
    const RelationContext scaled = Scale(ctx, rng.Uniform(0.25, 4.0));
    for (RelationKind kind : {RelationKind::kNear, RelationKind::kFar}) {
      ++r.checks;
      if (Evaluate(kind, ctx) != Evaluate(kind, scaled)) {
        r.Fail(Describe(kind, s, "scaling changed the result"));
      }
    }
  });
}

FuzzReport CheckOracleEquivalence(std::uint64_t seed, int contexts) {
  return ForEachContext(seed, contexts, [](const RelationContext& ctx,
                                           std::uint64_t s, FuzzReport& r) {
    for (RelationKind kind : kAllRelations) {
      const std::optional<TestResult> expected = OracleEvaluate(kind, ctx);
      if (!expected) continue;
      ++r.checks;
      if (Evaluate(kind, ctx) != *expected) {
        r.Fail(Describe(kind, s, "engine disagrees with oracle"));
      }
    }
  });
}

std::vector<double> RandomScores(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> scores(kEntitiesPerView);
  for (double& s : scores) s = rng.Uniform();
  if (rng.Bernoulli(0.3)) {
    // Copy one score onto another position to force a tie.
    scores[rng.UniformInt(0, 6)] = scores[rng.UniformInt(0, 6)];
  }
  if (rng.Bernoulli(0.05)) std::fill(scores.begin(), scores.end(), 0.5);
  return scores;
}

FuzzReport CheckTopKCardinality(std::uint64_t seed, int vectors) {
  FuzzReport report;
  for (int i = 0; i < vectors; ++i) {
    const auto scores = RandomScores(DeriveSeed(seed, "scores/" + std::to_string(i)));
    for (int k = 0; k <= kEntitiesPerView; ++k) {
      ++report.checks;
      const std::vector<int> picked = TopKPredict(scores, k);
      std::vector<int> unique = picked;
      unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
      if (static_cast<int>(unique.size()) != k) {
        report.Fail("vector " + std::to_string(i) + ", k=" + std::to_string(k));
      }
    }
  }
  return report;
}

FuzzReport CheckTopKMonotoneInvariance(std::uint64_t seed, int vectors) {
  // Strictly increasing maps on [0, 1].
  const std::function<double(double)> transforms[] = {
      [](double s) { return std::exp(3.0 * s); },
      [](double s) { return s * s * s + s; },
      [](double s) { return std::log1p(s) - 10.0; },
      [](double s) { return 1.0 / (1.0 + std::exp(-20.0 * (s - 0.5))); },
  };
  FuzzReport report;
  for (int i = 0; i < vectors; ++i) {
    const auto scores = RandomScores(DeriveSeed(seed, "monotone/" + std::to_string(i)));
    for (const auto& f : transforms) {
      std::vector<double> mapped;
      for (double s : scores) mapped.push_back(f(s));
      for (int k = 0; k <= kEntitiesPerView; ++k) {
        ++report.checks;
        if (TopKPredict(scores, k) != TopKPredict(mapped, k)) {
          report.Fail("vector " + std::to_string(i) + ", k=" + std::to_string(k));
        }
      }
    }
  }
  return report;
}

FuzzReport CheckKappaInvariances(std::uint64_t seed, int cases) {
  FuzzReport report;
  for (int i = 0; i < cases; ++i) {
    Rng rng(DeriveSeed(seed, "kappa/" + std::to_string(i)));
    const int n = rng.UniformInt(1, 200);
    const int categories = rng.UniformInt(1, 5);
    std::vector<int> a(n);
    std::vector<int> b(n);
    for (int t = 0; t < n; ++t) {
      a[t] = rng.UniformInt(0, categories - 1);
      b[t] = rng.Bernoulli(0.6) ? a[t] : rng.UniformInt(0, categories - 1);
    }
    // A random injective renaming of the categories.
    std::vector<std::string> names;
    for (int c = 0; c < categories; ++c) {
      names.push_back("c" + std::to_string(rng.UniformInt(0, 1000)) + "_" +
                      std::to_string(c));
    }
    std::vector<std::string> ra;
    std::vector<std::string> rb;
    for (int t = 0; t < n; ++t) {
      ra.push_back(names[a[t]]);
      rb.push_back(names[b[t]]);
    }
    const AgreementReport base = CohenKappa(a, b);
    const AgreementReport swapped = CohenKappa(b, a);
    const AgreementReport renamed = CohenKappa(ra, rb);
    ++report.checks;
    if (std::fabs(base.kappa - swapped.kappa) > 1e-12 ||
        std::fabs(base.percent_agreement - swapped.percent_agreement) > 1e-12) {
      report.Fail("asymmetric kappa in case " + std::to_string(i));
    }
    ++report.checks;
    if (std::fabs(base.kappa - renamed.kappa) > 1e-12 ||
        std::fabs(base.percent_agreement - renamed.percent_agreement) > 1e-12) {
      report.Fail("relabeling changed kappa in case " + std::to_string(i));
    }
  }
  return report;
}

}  // namespace spatialref::testing
