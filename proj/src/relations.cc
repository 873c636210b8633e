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

#include "spatialref/relations.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace spatialref {
namespace {

void RequireCategory(RelationKind kind, RelationCategory category) {
  if (CategoryOf(kind) != category) {
    throw std::invalid_argument("relation '" + std::string(RelationName(kind)) +
                                "' is not a " +
                                std::string(CategoryName(category)) +
                                " relation");
  }
}

bool Contains(std::span<const Entity> entities, int id) {
  return std::any_of(entities.begin(), entities.end(),
                     [id](const Entity& e) { return e.id == id; });
}

std::vector<Entity> Without(std::span<const Entity> from,
                            std::span<const Entity> removed) {
  std::vector<Entity> out;
  for (const Entity& e : from) {
    if (!Contains(removed, e.id)) out.push_back(e);
  }
  return out;
}

double MinOf(std::span<const Entity> entities, Attribute attribute) {
  double best = std::numeric_limits<double>::infinity();
  for (const Entity& e : entities) {
    best = std::min(best, AttributeValue(e, attribute));
  }
  return best;
}

double MaxOf(std::span<const Entity> entities, Attribute attribute) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Entity& e : entities) {
    best = std::max(best, AttributeValue(e, attribute));
  }
  return best;
}

// Mean pairwise distance of `a` compared against that of `e`; false when
// either side has fewer than two entities.
bool MeanDistanceLess(std::span<const Entity> a, std::span<const Entity> e) {
  if (a.size() < 2 || e.size() < 2) return false;
  return PairwiseMeanDistance(a) < PairwiseMeanDistance(e);
}

bool MeanDistanceGreater(std::span<const Entity> a, std::span<const Entity> e) {
  if (a.size() < 2 || e.size() < 2) return false;
  return PairwiseMeanDistance(a) > PairwiseMeanDistance(e);
}

bool OutsideRange(double value, double lo, double hi) {
  return value < lo || hi < value;
}

struct Comparison {
  Attribute attribute;
  double same_range;
  enum class Op {
    kGreater,   // lighter / larger
    kGreatest,  // lightest / largest
    kLess,      // darker / smaller
    kLeast,     // darkest / smallest
    kSame,
    kDifferent,
  } op;
};

TestResult Compare(const Comparison& c, const RelationContext& ctx) {
  const auto& s = ctx.subjects;
  const auto& o = ctx.objects;
  switch (c.op) {
    case Comparison::Op::kSame:
    case Comparison::Op::kDifferent: {
      const std::vector<Entity> all = AllReferents(ctx);
      TestResult r;
      r.valid = all.size() > 1;
      if (!r.valid) return r;
      const double range =
          MaxOf(all, c.attribute) - MinOf(all, c.attribute);
      r.satisfy = c.op == Comparison::Op::kSame ? range < c.same_range
                                                : range >= c.same_range;
      return r;
    }
    case Comparison::Op::kGreater:
    case Comparison::Op::kLess: {
      TestResult r;
      r.valid = !s.empty() && !o.empty();
      if (!r.valid) return r;
      const double ms = MeanAttribute(s, c.attribute);
      const double mo = MeanAttribute(o, c.attribute);
      r.satisfy = c.op == Comparison::Op::kGreater ? ms > mo : ms < mo;
      return r;
    }
    case Comparison::Op::kGreatest:
    case Comparison::Op::kLeast: {
      // Superlatives compare against the objects when given, otherwise
      // against every other observable entity.
      const std::vector<Entity> rest =
          o.empty() ? Without(ctx.view_entities, s) : Without(o, s);
      TestResult r;
      r.valid = !s.empty() && !rest.empty();
      if (!r.valid) return r;
      r.satisfy = c.op == Comparison::Op::kGreatest
                      ? MinOf(s, c.attribute) > MaxOf(rest, c.attribute)
                      : MaxOf(s, c.attribute) < MinOf(rest, c.attribute);
      return r;
    }
  }
  return {};
}

}  // namespace

std::vector<Entity> AllReferents(const RelationContext& ctx) {
  std::vector<Entity> all;
  for (const auto* group : {&ctx.subjects, &ctx.objects}) {
    for (const Entity& e : *group) {
      if (!Contains(all, e.id)) all.push_back(e);
    }
  }
  return all;
}

double FitSlope(std::span<const Point> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("slope fit needs at least 2 points");
  }
  const bool vertical =
      std::all_of(points.begin(), points.end(),
                  [&](const Point& p) { return p.x == points.front().x; });
  if (vertical) return std::numeric_limits<double>::infinity();

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const Point& p : points) {
    mean_x += p.x;
    mean_y += p.y;
  }
  mean_x /= static_cast<double>(points.size());
  mean_y /= static_cast<double>(points.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const Point& p : points) {
    sxy += (p.x - mean_x) * (p.y - mean_y);
    sxx += (p.x - mean_x) * (p.x - mean_x);
  }
  return sxy / sxx;
}

TestResult TestDirectionPair(RelationKind kind, const RelationContext& ctx) {
  Attribute axis;
  bool negative_side;  // satisfied by smaller coordinates
  switch (kind) {
    case RelationKind::kLeft:
      axis = Attribute::kX;
      negative_side = true;
      break;
    case RelationKind::kRight:
      axis = Attribute::kX;
      negative_side = false;
      break;
    case RelationKind::kAbove:
      axis = Attribute::kY;
      negative_side = false;
      break;
    case RelationKind::kBelow:
      axis = Attribute::kY;
      negative_side = true;
      break;
    default:
      throw std::invalid_argument("'" + std::string(RelationName(kind)) +
                                  "' is not a pairwise direction");
  }
  TestResult r;
  if (ctx.no_object) {
    r.valid = !ctx.subjects.empty();
    if (!r.valid) return r;
    const double m = MeanAttribute(ctx.subjects, axis);
    r.satisfy = negative_side ? m < 0.0 : m > 0.0;
  } else {
    r.valid = !ctx.subjects.empty() && !ctx.objects.empty();
    if (!r.valid) return r;
    const double ms = MeanAttribute(ctx.subjects, axis);
    const double mo = MeanAttribute(ctx.objects, axis);
    r.satisfy = negative_side ? ms < mo : ms > mo;
  }
  return r;
}

TestResult TestAxisAlignment(RelationKind kind, const RelationContext& ctx) {
  if (kind != RelationKind::kHorizontal && kind != RelationKind::kVertical &&
      kind != RelationKind::kDiagonal) {
    throw std::invalid_argument("'" + std::string(RelationName(kind)) +
                                "' is not an axis alignment");
  }
  const std::vector<Entity> all = AllReferents(ctx);
  TestResult r;
  r.valid = all.size() > 1;
  if (!r.valid) return r;
  std::vector<Point> points;
  points.reserve(all.size());
  for (const Entity& e : all) points.push_back({e.x, e.y});
  const double slope = std::fabs(FitSlope(points));
  switch (kind) {
    case RelationKind::kHorizontal:
      r.satisfy = slope < kHorizontalSlopeBound;
      break;
    case RelationKind::kVertical:
      r.satisfy = slope > kVerticalSlopeBound;  // includes +infinity
      break;
    default:
      r.satisfy =
          slope >= kHorizontalSlopeBound && slope <= kVerticalSlopeBound;
      break;
  }
  return r;
}

TestResult TestProximity(RelationKind kind, const RelationContext& ctx) {
  RequireCategory(kind, RelationCategory::kProximity);
  const auto& view = ctx.view_entities;
  TestResult r;
  switch (kind) {
    case RelationKind::kNear: {
      const std::vector<Entity> all = AllReferents(ctx);
      r.valid = all.size() > 1;
      r.satisfy = r.valid && MeanDistanceLess(all, view);
      break;
    }
    case RelationKind::kFar: {
      r.valid = !ctx.subjects.empty() &&
                (!ctx.objects.empty() || ctx.no_object);
      if (!r.valid) break;
      const std::vector<Entity> group =
          ctx.no_object ? ctx.subjects : AllReferents(ctx);
      r.satisfy = MeanDistanceGreater(group, view);
      break;
    }
    default: {  // alone
      r.valid = !ctx.subjects.empty();
      if (!r.valid) break;
      const std::vector<Entity> others = Without(view, ctx.subjects);
      if (others.empty() || view.size() < 2) break;
      double nearest = std::numeric_limits<double>::infinity();
      for (const Entity& s : ctx.subjects) {
        for (const Entity& e : others) nearest = std::min(nearest, Distance(s, e));
      }
      r.satisfy = nearest > PairwiseMeanDistance(view);
      break;
    }
  }
  return r;
}

TestResult TestRegion(RelationKind kind, const RelationContext& ctx) {
  RequireCategory(kind, RelationCategory::kRegion);
  const bool interior = kind == RelationKind::kInterior;
  const auto& subjects = ctx.subjects;
  TestResult r;
  if (ctx.no_object) {
    r.valid = !subjects.empty();
    if (!r.valid) return r;
    r.satisfy = std::all_of(subjects.begin(), subjects.end(),
                            [&](const Entity& s) {
                              const double d = std::hypot(s.x, s.y);
                              return interior ? d <= kInteriorRadius
                                              : d > kInteriorRadius;
                            });
    return r;
  }
  r.valid = !subjects.empty() && ctx.objects.size() > 1;
  if (!r.valid) return r;
  const double min_x = MinOf(ctx.objects, Attribute::kX);
  const double max_x = MaxOf(ctx.objects, Attribute::kX);
  const double min_y = MinOf(ctx.objects, Attribute::kY);
  const double max_y = MaxOf(ctx.objects, Attribute::kY);
  r.satisfy = std::all_of(
      subjects.begin(), subjects.end(), [&](const Entity& s) {
        const bool out_x = OutsideRange(s.x, min_x, max_x);
        const bool out_y = OutsideRange(s.y, min_y, max_y);
        return interior ? !(out_x && out_y) : (out_x || out_y);
      });
  return r;
}

TestResult TestColorComparison(RelationKind kind, const RelationContext& ctx) {
  RequireCategory(kind, RelationCategory::kColorComparison);
  using Op = Comparison::Op;
  Op op;
  switch (kind) {
    case RelationKind::kLighter:
      op = Op::kGreater;
      break;
    case RelationKind::kLightest:
      op = Op::kGreatest;
      break;
    case RelationKind::kDarker:
      op = Op::kLess;
      break;
    case RelationKind::kDarkest:
      op = Op::kLeast;
      break;
    case RelationKind::kSameColor:
      op = Op::kSame;
      break;
    default:
      op = Op::kDifferent;
      break;
  }
  return Compare({Attribute::kColor, kSameColorRange, op}, ctx);
}

TestResult TestSizeComparison(RelationKind kind, const RelationContext& ctx) {
  RequireCategory(kind, RelationCategory::kSizeComparison);
  using Op = Comparison::Op;
  Op op;
  switch (kind) {
    case RelationKind::kLarger:
      op = Op::kGreater;
      break;
    case RelationKind::kLargest:
      op = Op::kGreatest;
      break;
    case RelationKind::kSmaller:
      op = Op::kLess;
      break;
    case RelationKind::kSmallest:
      op = Op::kLeast;
      break;
    case RelationKind::kSameSize:
      op = Op::kSame;
      break;
    default:
      op = Op::kDifferent;
      break;
  }
  return Compare({Attribute::kSize, kSameSizeRange, op}, ctx);
}

TestResult Evaluate(RelationKind kind, const RelationContext& ctx) {
  switch (kind) {
    case RelationKind::kLeft:
    case RelationKind::kRight:
    case RelationKind::kAbove:
    case RelationKind::kBelow:
      return TestDirectionPair(kind, ctx);
    case RelationKind::kHorizontal:
    case RelationKind::kVertical:
    case RelationKind::kDiagonal:
      return TestAxisAlignment(kind, ctx);
    default:
      break;
  }
  switch (CategoryOf(kind)) {
    case RelationCategory::kProximity:
      return TestProximity(kind, ctx);
    case RelationCategory::kRegion:
      return TestRegion(kind, ctx);
    case RelationCategory::kColorComparison:
      return TestColorComparison(kind, ctx);
    case RelationCategory::kSizeComparison:
      return TestSizeComparison(kind, ctx);
    case RelationCategory::kDirection:
      break;
  }
  return {};
}

bool HasNoObjectForm(RelationKind kind) {
  switch (kind) {
    case RelationKind::kLighter:
    case RelationKind::kDarker:
    case RelationKind::kSmaller:
    case RelationKind::kLarger:
      return false;
    default:
      return true;
  }
}

}  // namespace spatialref
