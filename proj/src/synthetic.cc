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

#include "spatialref/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "spatialref/random.h"

namespace spatialref {
namespace {

constexpr double kMargin = 5.0;
constexpr double kSlopeMargin = 0.02;
constexpr double kNoObjectShare = 0.4;

using Pair = std::pair<int, int>;  // positions in the view

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.UniformInt(0, static_cast<int>(items.size()) - 1)];
}

// Closed-form helpers kept separate from the relation engine.
double Dist(const Entity& a, const Entity& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double MeanOfAllPairs(const std::vector<Entity>& e) {
  double sum = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      sum += Dist(e[i], e[j]);
      ++pairs;
    }
  }
  return sum / pairs;
}

enum class SlopeBand { kFlat, kSteep, kMiddle };

bool InBand(const Entity& a, const Entity& b, SlopeBand band) {
  const double dx = std::fabs(b.x - a.x);
  const double dy = std::fabs(b.y - a.y);
  switch (band) {
    case SlopeBand::kFlat:
      return dx > 0.0 && dy / dx <= 1.0 / 3.0 - kSlopeMargin;
    case SlopeBand::kSteep:
      return dx == 0.0 || dy / dx >= 3.0 + 0.1;
    case SlopeBand::kMiddle:
      return dx > 0.0 && dy / dx >= 1.0 / 3.0 + kSlopeMargin &&
             dy / dx <= 3.0 - 0.1;
  }
  return false;
}

class Constructor {
 public:
  Constructor(const View& view, std::uint64_t seed)
      : entities_(view.entities), rng_(seed) {}

  std::optional<RelationInstance> Build(RelationKind kind, Polarity polarity) {
    const bool violate = polarity == Polarity::kViolating;
    switch (kind) {
      case RelationKind::kLeft:
        return Direction(Attribute::kX, /*low=*/!violate);
      case RelationKind::kRight:
        return Direction(Attribute::kX, /*low=*/violate);
      case RelationKind::kAbove:
        return Direction(Attribute::kY, /*low=*/violate);
      case RelationKind::kBelow:
        return Direction(Attribute::kY, /*low=*/!violate);
      case RelationKind::kHorizontal:
        return Alignment(violate ? SlopeBand::kSteep : SlopeBand::kFlat);
      case RelationKind::kVertical:
        return Alignment(violate ? SlopeBand::kFlat : SlopeBand::kSteep);
      case RelationKind::kDiagonal:
        return Alignment(violate ? SlopeBand::kFlat : SlopeBand::kMiddle);
      case RelationKind::kNear:
        return PairByDistance(/*close=*/!violate, /*allow_no_object=*/true);
      case RelationKind::kFar:
        return PairByDistance(/*close=*/violate, /*allow_no_object=*/true);
      case RelationKind::kAlone:
        return Isolated(/*isolated=*/!violate);
      case RelationKind::kInterior:
        return Region(/*inside=*/!violate);
      case RelationKind::kExterior:
        return Region(/*inside=*/violate);
      case RelationKind::kLighter:
        return Pairwise(Attribute::kColor, /*greater=*/!violate);
      case RelationKind::kDarker:
        return Pairwise(Attribute::kColor, /*greater=*/violate);
      case RelationKind::kLarger:
        return Pairwise(Attribute::kSize, /*greater=*/!violate);
      case RelationKind::kSmaller:
        return Pairwise(Attribute::kSize, /*greater=*/violate);
      case RelationKind::kLightest:
        return Extreme(Attribute::kColor, /*greatest=*/!violate);
      case RelationKind::kDarkest:
        return Extreme(Attribute::kColor, /*greatest=*/violate);
      case RelationKind::kLargest:
        return Extreme(Attribute::kSize, /*greatest=*/!violate);
      case RelationKind::kSmallest:
        return Extreme(Attribute::kSize, /*greatest=*/violate);
      case RelationKind::kSameColor:
        return Spread(Attribute::kColor, /*same=*/!violate);
      case RelationKind::kDifferentColor:
        return Spread(Attribute::kColor, /*same=*/violate);
      case RelationKind::kSameSize:
        return Spread(Attribute::kSize, /*same=*/!violate);
      case RelationKind::kDifferentSize:
        return Spread(Attribute::kSize, /*same=*/violate);
    }
    return std::nullopt;
  }

 private:
  int Id(int position) const { return entities_[position].id; }
  int Count() const { return static_cast<int>(entities_.size()); }

  double Value(int position, Attribute attribute) const {
    return AttributeValue(entities_[position], attribute);
  }

  std::vector<Pair> OrderedPairs(auto predicate) const {
    std::vector<Pair> out;
    for (int i = 0; i < Count(); ++i) {
      for (int j = 0; j < Count(); ++j) {
        if (i != j && predicate(i, j)) out.emplace_back(i, j);
      }
    }
    return out;
  }

  std::vector<int> Singles(auto predicate) const {
    std::vector<int> out;
    for (int i = 0; i < Count(); ++i) {
      if (predicate(i)) out.push_back(i);
    }
    return out;
  }

  // Turns a chosen pair into either a two-subject no-object instance or a
  // subject/object instance.
  RelationInstance FromPair(const Pair& p, bool allow_no_object) {
    RelationInstance instance;
    if (allow_no_object && rng_.Bernoulli(kNoObjectShare)) {
      instance.subjects = {Id(p.first), Id(p.second)};
      std::sort(instance.subjects.begin(), instance.subjects.end());
      instance.no_object = true;
    } else {
      instance.subjects = {Id(p.first)};
      instance.objects = {Id(p.second)};
    }
    return instance;
  }

  // Subjects on the low (or high) side of the axis.
  std::optional<RelationInstance> Direction(Attribute axis, bool low) {
    auto on_side = [&](double subject, double reference) {
      return low ? subject + kMargin <= reference
                 : subject >= reference + kMargin;
    };
    const std::vector<int> singles =
        Singles([&](int i) { return on_side(Value(i, axis), 0.0); });
    const std::vector<Pair> pairs = OrderedPairs(
        [&](int i, int j) { return on_side(Value(i, axis), Value(j, axis)); });
    const bool prefer_no_object = rng_.Bernoulli(kNoObjectShare);
    if ((prefer_no_object || pairs.empty()) && !singles.empty()) {
      return RelationInstance{{Id(Pick(rng_, singles))}, {}, true};
    }
    if (pairs.empty()) return std::nullopt;
    const Pair p = Pick(rng_, pairs);
    RelationInstance instance{{Id(p.first)}, {Id(p.second)}, false};
    // Optionally a second subject on the same side of the object.
    std::vector<int> extra = Singles([&](int k) {
      return k != p.first && k != p.second &&
             on_side(Value(k, axis), Value(p.second, axis));
    });
    if (!extra.empty() && rng_.Bernoulli(0.3)) {
      instance.subjects.push_back(Id(Pick(rng_, extra)));
      std::sort(instance.subjects.begin(), instance.subjects.end());
    }
    return instance;
  }

  std::optional<RelationInstance> Alignment(SlopeBand band) {
    const std::vector<Pair> pairs = OrderedPairs([&](int i, int j) {
      return i < j && InBand(entities_[i], entities_[j], band);
    });
    if (pairs.empty()) return std::nullopt;
    return FromPair(Pick(rng_, pairs), true);
  }

  std::optional<RelationInstance> PairByDistance(bool close,
                                                 bool allow_no_object) {
    const double mean = MeanOfAllPairs(entities_);
    const std::vector<Pair> pairs = OrderedPairs([&](int i, int j) {
      const double d = Dist(entities_[i], entities_[j]);
      return close ? d <= mean - kMargin : d >= mean + kMargin;
    });
    if (pairs.empty()) return std::nullopt;
    return FromPair(Pick(rng_, pairs), allow_no_object);
  }

  std::optional<RelationInstance> Isolated(bool isolated) {
    const double mean = MeanOfAllPairs(entities_);
    const std::vector<int> singles = Singles([&](int i) {
      double nearest = 1e300;
      for (int j = 0; j < Count(); ++j) {
        if (j != i) nearest = std::min(nearest, Dist(entities_[i], entities_[j]));
      }
      return isolated ? nearest >= mean + kMargin : nearest <= mean - kMargin;
    });
    if (singles.empty()) return std::nullopt;
    return RelationInstance{{Id(Pick(rng_, singles))}, {}, true};
  }

  std::optional<RelationInstance> Region(bool inside) {
    // Center form: distance from the view center against 120 +- margin.
    const std::vector<int> singles = Singles([&](int i) {
      const double r = std::sqrt(Value(i, Attribute::kX) * Value(i, Attribute::kX) +
                                 Value(i, Attribute::kY) * Value(i, Attribute::kY));
      return inside ? r <= 120.0 - kMargin : r >= 120.0 + kMargin;
    });
    // Object form: subject strictly inside the objects' box on both axes, or
    // outside it on both axes.
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < Count(); ++i) {
      for (int j = 0; j < Count(); ++j) {
        for (int k = j + 1; k < Count(); ++k) {
          if (i == j || i == k) continue;
          const Entity& s = entities_[i];
          const double lo_x = std::min(entities_[j].x, entities_[k].x);
          const double hi_x = std::max(entities_[j].x, entities_[k].x);
          const double lo_y = std::min(entities_[j].y, entities_[k].y);
          const double hi_y = std::max(entities_[j].y, entities_[k].y);
          const bool in_x = s.x >= lo_x + kMargin && s.x <= hi_x - kMargin;
          const bool in_y = s.y >= lo_y + kMargin && s.y <= hi_y - kMargin;
          const bool out_x = s.x <= lo_x - kMargin || s.x >= hi_x + kMargin;
          const bool out_y = s.y <= lo_y - kMargin || s.y >= hi_y + kMargin;
          if (inside ? (in_x && in_y) : (out_x && out_y)) {
            triples.push_back({i, j, k});
          }
        }
      }
    }
    const bool prefer_no_object = rng_.Bernoulli(kNoObjectShare);
    if ((prefer_no_object || triples.empty()) && !singles.empty()) {
      return RelationInstance{{Id(Pick(rng_, singles))}, {}, true};
    }
    if (triples.empty()) return std::nullopt;
    const auto t = Pick(rng_, triples);
    return RelationInstance{{Id(t[0])}, {Id(t[1]), Id(t[2])}, false};
  }

  std::optional<RelationInstance> Pairwise(Attribute attribute, bool greater) {
    const std::vector<Pair> pairs = OrderedPairs([&](int i, int j) {
      return greater ? Value(i, attribute) > Value(j, attribute)
                     : Value(i, attribute) < Value(j, attribute);
    });
    if (pairs.empty()) return std::nullopt;
    return FromPair(Pick(rng_, pairs), false);
  }

  std::optional<RelationInstance> Extreme(Attribute attribute, bool greatest) {
    auto beats = [&](int i, int j) {
      return greatest ? Value(i, attribute) > Value(j, attribute)
                      : Value(i, attribute) < Value(j, attribute);
    };
    const bool prefer_no_object = rng_.Bernoulli(kNoObjectShare);
    if (prefer_no_object) {
      const std::vector<int> singles = Singles([&](int i) {
        for (int j = 0; j < Count(); ++j) {
          if (j != i && !beats(i, j)) return false;
        }
        return true;
      });
      if (!singles.empty()) {
        return RelationInstance{{Id(Pick(rng_, singles))}, {}, true};
      }
    }
    // Explicit comparison group: a subject and 2-3 entities it beats.
    std::vector<int> subjects = Singles([&](int i) {
      int beaten = 0;
      for (int j = 0; j < Count(); ++j) beaten += (j != i && beats(i, j));
      return beaten >= 2;
    });
    if (subjects.empty()) return std::nullopt;
    const int s = Pick(rng_, subjects);
    std::vector<int> beaten = Singles([&](int j) { return j != s && beats(s, j); });
    for (int i = static_cast<int>(beaten.size()) - 1; i > 0; --i) {
      std::swap(beaten[i], beaten[rng_.UniformInt(0, i)]);
    }
    beaten.resize(std::min<std::size_t>(beaten.size(), rng_.UniformInt(2, 3)));
    RelationInstance instance{{Id(s)}, {}, false};
    for (int j : beaten) instance.objects.push_back(Id(j));
    std::sort(instance.objects.begin(), instance.objects.end());
    return instance;
  }

  std::optional<RelationInstance> Spread(Attribute attribute, bool same) {
    // Color: same within 25 grades, different by 35 or more. Size: equal for
    // same, 2 or more apart for different.
    const bool color = attribute == Attribute::kColor;
    const double same_limit = color ? 25.0 : 0.0;
    const double different_limit = color ? 35.0 : 2.0;
    const std::vector<Pair> pairs = OrderedPairs([&](int i, int j) {
      const double gap = std::fabs(Value(i, attribute) - Value(j, attribute));
      return i < j && (same ? gap <= same_limit : gap >= different_limit);
    });
    if (pairs.empty()) return std::nullopt;
    return FromPair(Pick(rng_, pairs), true);
  }

  const std::vector<Entity>& entities_;
  Rng rng_;
};

// ---------------------------------------------------------------------------
// Dialogue text.

struct Phrase {
  const char* with_object;
  const char* without_object;
};

Phrase PhraseFor(RelationKind kind) {
  switch (kind) {
    case RelationKind::kLeft:
      return {"to the left of", "on the left"};
    case RelationKind::kRight:
      return {"to the right of", "on the right"};
    case RelationKind::kAbove:
      return {"above", "at the top"};
    case RelationKind::kBelow:
      return {"below", "at the bottom"};
    case RelationKind::kHorizontal:
      return {"level with", "in a horizontal line"};
    case RelationKind::kVertical:
      return {"vertically aligned with", "in a vertical line"};
    case RelationKind::kDiagonal:
      return {"diagonal from", "on a diagonal"};
    case RelationKind::kNear:
      return {"close to", "close together"};
    case RelationKind::kFar:
      return {"far from", "far apart"};
    case RelationKind::kAlone:
      return {"away from", "by itself"};
    case RelationKind::kInterior:
      return {"between", "in the middle"};
    case RelationKind::kExterior:
      return {"outside", "near the edge"};
    case RelationKind::kLighter:
      return {"lighter than", "lighter"};
    case RelationKind::kLightest:
      return {"the lightest of", "the lightest"};
    case RelationKind::kDarker:
      return {"darker than", "darker"};
    case RelationKind::kDarkest:
      return {"the darkest of", "the darkest"};
    case RelationKind::kSameColor:
      return {"the same color as", "the same color"};
    case RelationKind::kDifferentColor:
      return {"a different color from", "different colors"};
    case RelationKind::kSmaller:
      return {"smaller than", "smaller"};
    case RelationKind::kSmallest:
      return {"the smallest of", "the smallest"};
    case RelationKind::kLarger:
      return {"larger than", "larger"};
    case RelationKind::kLargest:
      return {"the largest of", "the largest"};
    case RelationKind::kSameSize:
      return {"the same size as", "the same size"};
    case RelationKind::kDifferentSize:
      return {"a different size from", "different sizes"};
  }
  return {"", ""};
}

const char* ColorWord(int color) {
  if (color < 20) return "very dark";
  if (color < 45) return "black";
  if (color < 70) return "dark";
  if (color < 95) return "grey";
  if (color < 120) return "light";
  return "very light";
}

const char* SizeWord(int size) {
  if (size <= 1) return "small";
  if (size >= 4) return "large";
  return nullptr;
}

void AppendWords(std::vector<std::string>& tokens, std::string_view text) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(' ', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) tokens.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
}

std::string PaddedId(const char* prefix, int n) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%s%06d", prefix, n);
  return buffer;
}

struct ModifierChoice {
  ModificationType type;
  const char* phrase;
};

constexpr std::array<ModifierChoice, 10> kModifierChoices = {{
    {ModificationType::kSubtlety, "slightly"},
    {ModificationType::kSubtlety, "a little"},
    {ModificationType::kExtremity, "very"},
    {ModificationType::kExtremity, "really"},
    {ModificationType::kUncertainty, "almost"},
    {ModificationType::kUncertainty, "kind of"},
    {ModificationType::kCertainty, "directly"},
    {ModificationType::kCertainty, "exactly"},
    {ModificationType::kNeutrality, "fairly"},
    {ModificationType::kNeutrality, "medium"},
}};

class DialogueBuilder {
 public:
  DialogueBuilder(std::string dialogue_id, const ScenePair& scene, Rng& rng)
      : scene_(scene), rng_(rng) {
    doc_.dialogue_id = std::move(dialogue_id);
    doc_.scene_id = scene.scene_id;
  }

  // Adds the utterances for one instance. Returns false when the instance
  // was negated and therefore will not be tested.
  bool AddInstance(RelationKind kind, Player speaker,
                   const RelationInstance& instance) {
    const bool has_objects = !instance.objects.empty();
    const double roll = rng_.Uniform();
    const bool object_elided = has_objects && roll < 0.15;
    const bool subject_elided = !object_elided && roll < 0.2;

    std::string subject_id;
    std::string object_id;
    if (object_elided || subject_elided) {
      const auto& earlier = object_elided ? instance.objects : instance.subjects;
      Utterance u{Index(), speaker, {"i", "see"}};
      const int start = static_cast<int>(u.tokens.size());
      AppendMarkableWords(u.tokens, speaker, earlier);
      const std::string id = AddMarkable(u.index, start, u.tokens.size(), earlier);
      (object_elided ? object_id : subject_id) = id;
      doc_.utterances.push_back(std::move(u));
      doc_.utterances.push_back(
          Utterance{Index(), Other(speaker), {"okay", "go", "on"}});
    }

    Utterance u{Index(), speaker, {}};
    if (subject_id.empty()) {
      const int start = 0;
      AppendMarkableWords(u.tokens, speaker, instance.subjects);
      subject_id = AddMarkable(u.index, start, u.tokens.size(), instance.subjects);
    } else {
      u.tokens.push_back("it");
    }
    u.tokens.push_back(instance.subjects.size() > 1 && !subject_elided ? "are"
                                                                       : "is");

    std::optional<ModifierAnnotation> modifier;
    const double modifier_roll = rng_.Uniform();
    if (modifier_roll < 0.03) {
      modifier = ModifierAnnotation{"", u.index, {}, ModificationType::kNegation,
                                    ""};
      const int start = static_cast<int>(u.tokens.size());
      u.tokens.push_back("not");
      modifier->span = TokenSpan::Range(start, start + 1);
    } else if (modifier_roll < 0.33) {
      const ModifierChoice choice = kModifierChoices[rng_.UniformInt(
          0, static_cast<int>(kModifierChoices.size()) - 1)];
      const int start = static_cast<int>(u.tokens.size());
      AppendWords(u.tokens, choice.phrase);
      modifier = ModifierAnnotation{
          "", u.index,
          TokenSpan::Range(start, static_cast<int>(u.tokens.size())),
          choice.type, ""};
    }

    const Phrase phrase = PhraseFor(kind);
    const int relation_start = static_cast<int>(u.tokens.size());
    AppendWords(u.tokens, has_objects ? phrase.with_object : phrase.without_object);
    const int relation_end = static_cast<int>(u.tokens.size());
    if (has_objects) {
      if (object_id.empty()) {
        const int start = static_cast<int>(u.tokens.size());
        AppendMarkableWords(u.tokens, speaker, instance.objects);
        object_id = AddMarkable(u.index, start, u.tokens.size(), instance.objects);
      } else {
        u.tokens.push_back("that");
        u.tokens.push_back("one");
      }
    }

    SpatialExpression e;
    e.id = PaddedId("x", next_expression_++);
    e.kind = ExpressionKind::kRelation;
    e.utterance = u.index;
    e.span = TokenSpan::Range(relation_start, relation_end);
    e.subjects = {subject_id};
    if (has_objects) e.objects = {object_id};
    e.no_object = instance.no_object;
    e.canonical = {kind};
    if (modifier) {
      modifier->id = PaddedId("d", next_modifier_++);
      modifier->modificand = e.id;
      e.modifiers = {modifier->id};
      doc_.modifiers.push_back(*modifier);
    }
    doc_.expressions.push_back(std::move(e));
    doc_.utterances.push_back(std::move(u));

    // An occasional attribute remark about a single subject.
    if (instance.subjects.size() == 1 && rng_.Bernoulli(0.1)) {
      const Entity* s = scene_.ViewOf(speaker).Find(instance.subjects[0]);
      Utterance remark{Index(), speaker, {"that", "one", "is"}};
      const int start = static_cast<int>(remark.tokens.size());
      AppendWords(remark.tokens, ColorWord(s->color));
      SpatialExpression attribute;
      attribute.id = PaddedId("x", next_expression_++);
      attribute.kind = ExpressionKind::kAttribute;
      attribute.utterance = remark.index;
      attribute.span =
          TokenSpan::Range(start, static_cast<int>(remark.tokens.size()));
      attribute.subjects = {subject_id};
      attribute.no_object = true;
      doc_.expressions.push_back(std::move(attribute));
      doc_.utterances.push_back(std::move(remark));
    }
    return !(modifier && modifier->type == ModificationType::kNegation);
  }

  bool empty() const { return doc_.expressions.empty(); }
  DialogueDocument Take() { return std::move(doc_); }

 private:
  int Index() const { return static_cast<int>(doc_.utterances.size()); }
  static Player Other(Player p) {
    return p == Player::kA ? Player::kB : Player::kA;
  }

  std::string AddMarkable(int utterance, int start, std::size_t end,
                          const std::vector<int>& referents) {
    Markable m;
    m.id = PaddedId("m", next_markable_++);
    m.utterance = utterance;
    m.span = TokenSpan::Range(start, static_cast<int>(end));
    m.referents = referents;
    doc_.markables.push_back(m);
    return m.id;
  }

  void AppendMarkableWords(std::vector<std::string>& tokens, Player speaker,
                           const std::vector<int>& referents) {
    tokens.push_back("the");
    if (referents.size() == 1) {
      const Entity* e = scene_.ViewOf(speaker).Find(referents[0]);
      if (rng_.Bernoulli(0.7)) AppendWords(tokens, ColorWord(e->color));
      const char* size = SizeWord(e->size);
      if (size != nullptr && rng_.Bernoulli(0.5)) tokens.push_back(size);
      tokens.push_back("dot");
      return;
    }
    static constexpr std::array<const char*, 8> kCounts = {
        "zero", "one", "two", "three", "four", "five", "six", "seven"};
    tokens.push_back(kCounts[std::min<std::size_t>(referents.size(), 7)]);
    tokens.push_back("dots");
  }

  const ScenePair& scene_;
  Rng& rng_;
  DialogueDocument doc_;
  int next_markable_ = 0;
  int next_expression_ = 0;
  int next_modifier_ = 0;
};

}  // namespace

std::optional<RelationInstance> ConstructInstance(RelationKind kind,
                                                  Polarity polarity,
                                                  const View& view,
                                                  std::uint64_t seed) {
  return Constructor(view, seed).Build(kind, polarity);
}

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticOptions& options) {
  if (options.instances_per_relation < 0 || options.instances_per_dialogue < 1) {
    throw std::invalid_argument("invalid synthetic corpus options");
  }
  constexpr int kMaxDialogues = 1'000'000;
  SyntheticCorpus corpus;
  std::array<int, kRelationCount> counts{};
  auto done = [&] {
    return std::all_of(counts.begin(), counts.end(), [&](int c) {
      return c >= options.instances_per_relation;
    });
  };

  for (int d = 0; !done(); ++d) {
    if (d >= kMaxDialogues) {
      throw std::runtime_error("synthetic generation did not converge");
    }
    const std::string dialogue_id = PaddedId("synth-", d);
    ScenePair scene = GenerateScenePair(
        DeriveSeed(options.seed, "scene/" + dialogue_id), 4 + d % 3);
    scene.scene_id = PaddedId("scene-", d);
    Rng rng(DeriveSeed(options.seed, "dialogue/" + dialogue_id));
    DialogueBuilder builder(dialogue_id, scene, rng);

    // Relations still short of the target, fewest instances first.
    std::vector<int> pending;
    for (int r = 0; r < kRelationCount; ++r) {
      if (counts[r] < options.instances_per_relation) pending.push_back(r);
    }
    std::stable_sort(pending.begin(), pending.end(),
                     [&](int a, int b) { return counts[a] < counts[b]; });

    int added = 0;
    for (int r : pending) {
      if (added >= options.instances_per_dialogue) break;
      const RelationKind kind = kAllRelations[r];
      const Player speaker = rng.Bernoulli(0.5) ? Player::kA : Player::kB;
      const auto instance = ConstructInstance(
          kind, options.polarity, scene.ViewOf(speaker),
          DeriveSeed(options.seed, dialogue_id + "/" +
                                       std::string(RelationName(kind))));
      if (!instance) continue;
      if (builder.AddInstance(kind, speaker, *instance)) ++counts[r];
      ++added;
    }
    if (builder.empty()) continue;
    corpus.documents.push_back(builder.Take());
    corpus.scenes.push_back(std::move(scene));
  }
  return corpus;
}

}  // namespace spatialref
