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

#include "spatialref/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "spatialref/random.h"

namespace spatialref {
namespace {

std::map<std::string, const ReferentLabel*> IndexByKey(
    std::span<const ReferentLabel> labels, std::string_view side) {
  std::map<std::string, const ReferentLabel*> index;
  for (const ReferentLabel& label : labels) {
    if (!index.emplace(label.key, &label).second) {
      throw std::invalid_argument("duplicate markable '" + label.key +
                                  "' in " + std::string(side));
    }
  }
  return index;
}

// Pairs each prediction with its gold label by key.
std::vector<std::pair<const ReferentLabel*, const ReferentLabel*>> Align(
    std::span<const ReferentLabel> predictions,
    std::span<const ReferentLabel> golds) {
  if (predictions.empty() || golds.empty()) {
    throw std::invalid_argument("no markables to score");
  }
  const auto pred_index = IndexByKey(predictions, "predictions");
  const auto gold_index = IndexByKey(golds, "gold");
  if (pred_index.size() != gold_index.size()) {
    throw std::invalid_argument("prediction and gold markables differ");
  }
  std::vector<std::pair<const ReferentLabel*, const ReferentLabel*>> pairs;
  for (const auto& [key, pred] : pred_index) {
    auto it = gold_index.find(key);
    if (it == gold_index.end()) {
      throw std::invalid_argument("markable '" + key + "' has no gold label");
    }
    pairs.emplace_back(pred, it->second);
  }
  return pairs;
}

std::set<int> AsSet(const std::vector<int>& positions) {
  return {positions.begin(), positions.end()};
}

std::string FormatRate(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

AnalysisRow MakeRow(std::string group, std::string key,
                    const std::vector<const CaseRecord*>& members) {
  AnalysisRow row{std::move(group), std::move(key)};
  row.cases = static_cast<int>(members.size());
  for (const CaseRecord* c : members) {
    row.satisfied += c->result.satisfy ? 1 : 0;
    row.valid += c->result.valid ? 1 : 0;
  }
  if (row.cases > 0) {
    row.satisfy_rate = 100.0 * row.satisfied / row.cases;
    row.valid_rate = 100.0 * row.valid / row.cases;
  }
  return row;
}

std::string_view ObjectStatusName(ObjectStatus status) {
  switch (status) {
    case ObjectStatus::kNoObject:
      return "no object";
    case ObjectStatus::kIgnorable:
      return "ignorable object";
    case ObjectStatus::kUnignorable:
      return "unignorable object";
  }
  return "";
}

std::optional<std::pair<DifferenceValue, Attribute>> ComparativeValue(
    RelationKind kind) {
  switch (kind) {
    case RelationKind::kLeft:
    case RelationKind::kRight:
      return std::pair{DifferenceValue::kXY, Attribute::kX};
    case RelationKind::kAbove:
    case RelationKind::kBelow:
      return std::pair{DifferenceValue::kXY, Attribute::kY};
    case RelationKind::kLighter:
    case RelationKind::kDarker:
      return std::pair{DifferenceValue::kColor, Attribute::kColor};
    case RelationKind::kSmaller:
    case RelationKind::kLarger:
      return std::pair{DifferenceValue::kSize, Attribute::kSize};
    default:
      return std::nullopt;
  }
}

void AppendEntities(const View& view, const std::vector<int>& ids,
                    std::vector<Entity>& out) {
  for (int id : ids) {
    const Entity* e = view.Find(id);
    if (e == nullptr) continue;
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [id](const Entity& x) { return x.id == id; });
    if (!seen) out.push_back(*e);
  }
}

constexpr std::array<ModificationStrength, 3> kStrengths = {
    ModificationStrength::kStrong, ModificationStrength::kNeutral,
    ModificationStrength::kWeak};

}  // namespace

double EntityAccuracy(std::span<const ReferentLabel> predictions,
                      std::span<const ReferentLabel> golds) {
  const auto pairs = Align(predictions, golds);
  std::size_t correct = 0;
  for (const auto& [pred, gold] : pairs) {
    const std::set<int> p = AsSet(pred->positions);
    const std::set<int> g = AsSet(gold->positions);
    for (int i = 0; i < kEntitiesPerView; ++i) {
      if ((p.count(i) > 0) == (g.count(i) > 0)) ++correct;
    }
  }
  return static_cast<double>(correct) /
         static_cast<double>(pairs.size() * kEntitiesPerView);
}

double ExactMatch(std::span<const ReferentLabel> predictions,
                  std::span<const ReferentLabel> golds) {
  const auto pairs = Align(predictions, golds);
  std::size_t exact = 0;
  for (const auto& [pred, gold] : pairs) {
    if (AsSet(pred->positions) == AsSet(gold->positions)) ++exact;
  }
  return static_cast<double>(exact) / static_cast<double>(pairs.size());
}

AgreementReport TokenAgreement(std::span<const SpanRef> spans_a,
                               std::span<const SpanRef> spans_b,
                               std::span<const Utterance> utterances,
                               TokenAgreementMode mode) {
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
  for (const Utterance& u : utterances) {
    offsets.push_back(total);
    total += u.tokens.size();
  }
  auto label = [&](std::span<const SpanRef> spans) {
    std::vector<int> labels(total, 0);
    for (const SpanRef& ref : spans) {
      if (ref.utterance < 0 ||
          ref.utterance >= static_cast<int>(utterances.size())) {
        throw std::invalid_argument("span refers to missing utterance " +
                                    std::to_string(ref.utterance));
      }
      if (ref.span.empty()) continue;
      const int length =
          static_cast<int>(utterances[ref.utterance].tokens.size());
      if (ref.span.first() < 0 || ref.span.last() >= length) {
        throw std::invalid_argument("span leaves utterance " +
                                    std::to_string(ref.utterance));
      }
      const std::size_t base = offsets[ref.utterance];
      if (mode == TokenAgreementMode::kStartTokens) {
        labels[base + ref.span.first()] = 1;
      } else {
        for (int i : ref.span.indices()) labels[base + i] = 1;
      }
    }
    return labels;
  };
  return CohenKappa(label(spans_a), label(spans_b));
}

std::string_view DifferenceValueName(DifferenceValue value) {
  switch (value) {
    case DifferenceValue::kXY:
      return "xy-value";
    case DifferenceValue::kColor:
      return "color";
    case DifferenceValue::kSize:
      return "size";
  }
  return "";
}

std::string_view GroupingName(Grouping grouping) {
  switch (grouping) {
    case Grouping::kRelation:
      return "relation";
    case Grouping::kCategory:
      return "category";
    case Grouping::kStrength:
      return "strength";
    case Grouping::kFactor:
      return "factor";
  }
  return "";
}

std::optional<Grouping> ParseGrouping(std::string_view name) {
  for (Grouping g : {Grouping::kRelation, Grouping::kCategory,
                     Grouping::kStrength, Grouping::kFactor}) {
    if (GroupingName(g) == name) return g;
  }
  return std::nullopt;
}

AnalysisTable SatisfyValidTable(std::span<const CaseRecord> cases,
                                Grouping grouping) {
  AnalysisTable table;
  table.grouping = grouping;
  std::vector<const CaseRecord*> all;
  for (const CaseRecord& c : cases) all.push_back(&c);

  auto select = [&](auto predicate) {
    std::vector<const CaseRecord*> members;
    for (const CaseRecord* c : all) {
      if (predicate(*c)) members.push_back(c);
    }
    return members;
  };
  const std::string group(GroupingName(grouping));

  switch (grouping) {
    case Grouping::kRelation:
      for (RelationKind kind : kAllRelations) {
        table.rows.push_back(MakeRow(
            std::string(CategoryName(CategoryOf(kind))),
            std::string(RelationName(kind)),
            select([kind](const CaseRecord& c) { return c.relation == kind; })));
      }
      return table;
    case Grouping::kCategory:
      for (RelationCategory category : kAllCategories) {
        table.rows.push_back(MakeRow(
            group, std::string(CategoryName(category)),
            select([category](const CaseRecord& c) {
              return CategoryOf(c.relation) == category;
            })));
      }
      break;
    case Grouping::kStrength:
      for (ModificationStrength strength : kStrengths) {
        table.rows.push_back(MakeRow(
            group, std::string(StrengthName(strength)),
            select([strength](const CaseRecord& c) {
              return c.strength == strength;
            })));
      }
      break;
    case Grouping::kFactor:
      table.rows.push_back(MakeRow(
          group, "inter-utterance subject",
          select([](const CaseRecord& c) { return c.inter_utterance_subject; })));
      table.rows.push_back(MakeRow(
          group, "inter-utterance object",
          select([](const CaseRecord& c) { return c.inter_utterance_object; })));
      for (ObjectStatus status : {ObjectStatus::kNoObject,
                                  ObjectStatus::kIgnorable,
                                  ObjectStatus::kUnignorable}) {
        table.rows.push_back(MakeRow(
            group, std::string(ObjectStatusName(status)),
            select([status](const CaseRecord& c) {
              return c.object_status == status;
            })));
      }
      break;
  }
  table.rows.push_back(MakeRow(group, "all", all));
  return table;
}

std::string ToCsv(const AnalysisTable& table) {
  std::ostringstream out;
  out << "group,key,cases,satisfied,valid,satisfy_rate,valid_rate\n";
  for (const AnalysisRow& row : table.rows) {
    out << row.group << ',' << row.key << ',' << row.cases << ','
        << row.satisfied << ',' << row.valid << ','
        << FormatRate(row.satisfy_rate) << ',' << FormatRate(row.valid_rate)
        << '\n';
  }
  return out.str();
}

std::optional<bool> IgnorableObject(RelationKind kind,
                                    const RelationContext& gold) {
  if (!HasNoObjectForm(kind)) return std::nullopt;
  RelationContext stripped = gold;
  stripped.objects.clear();
  stripped.no_object = true;
  return Evaluate(kind, stripped).satisfy;
}

std::vector<DifferenceCell> AbsoluteDifferenceTable(
    std::span<const CaseRecord> cases) {
  std::vector<DifferenceCell> cells;
  for (DifferenceValue value : {DifferenceValue::kXY, DifferenceValue::kColor,
                                DifferenceValue::kSize}) {
    for (ModificationStrength strength : kStrengths) {
      DifferenceCell cell;
      cell.value = value;
      cell.strength = strength;
      double total = 0.0;
      for (const CaseRecord& c : cases) {
        if (c.difference_value != value || c.strength != strength ||
            !c.difference) {
          continue;
        }
        total += *c.difference;
        ++cell.valid_count;
      }
      if (cell.valid_count > 0) cell.mean_difference = total / cell.valid_count;
      cells.push_back(cell);
    }
  }
  return cells;
}

std::string DifferenceCsv(std::span<const DifferenceCell> cells) {
  std::ostringstream out;
  out << "value,strength,mean_abs_difference,valid_count\n";
  for (const DifferenceCell& cell : cells) {
    out << DifferenceValueName(cell.value) << ','
        << StrengthName(cell.strength) << ','
        << (cell.mean_difference ? FormatRate(*cell.mean_difference) : "NA")
        << ',' << cell.valid_count << '\n';
  }
  return out.str();
}

std::string CasesCsv(std::span<const CaseRecord> cases) {
  std::ostringstream out;
  out << "dialogue_id,expression_id,relation,category,satisfy,valid,strength,"
         "inter_utterance_subject,inter_utterance_object,object_status\n";
  for (const CaseRecord& c : cases) {
    out << c.dialogue_id << ',' << c.expression_id << ','
        << RelationName(c.relation) << ','
        << CategoryName(CategoryOf(c.relation)) << ','
        << (c.result.satisfy ? 1 : 0) << ',' << (c.result.valid ? 1 : 0) << ','
        << StrengthName(c.strength) << ','
        << (c.inter_utterance_subject ? 1 : 0) << ','
        << (c.inter_utterance_object ? 1 : 0) << ','
        << ObjectStatusName(c.object_status) << '\n';
  }
  return out.str();
}

ReferentMap GoldReferents(const DialogueDocument& doc) {
  ReferentMap map;
  for (const Markable& m : doc.markables) map[m.id] = m.referents;
  return map;
}

RelationContext BuildContext(const DialogueDocument& doc,
                             const ScenePair& scene,
                             const SpatialExpression& expression,
                             const ReferentMap& referents) {
  const View& view = scene.ViewOf(doc.SpeakerOf(expression));
  RelationContext ctx;
  ctx.no_object = expression.no_object;
  ctx.view_entities = view.entities;
  for (const auto& [ids, out] :
       {std::pair{&expression.subjects, &ctx.subjects},
        std::pair{&expression.objects, &ctx.objects}}) {
    for (const std::string& markable_id : *ids) {
      auto it = referents.find(markable_id);
      if (it != referents.end()) AppendEntities(view, it->second, *out);
    }
  }
  return ctx;
}

std::vector<CaseRecord> CollectCases(const DialogueDocument& doc,
                                     const ScenePair& scene,
                                     const ReferentMap& predicted) {
  const ReferentMap gold = GoldReferents(doc);
  std::vector<CaseRecord> cases;
  for (const SpatialExpression& e : FilterTestable(doc, doc.expressions)) {
    const RelationContext ctx = BuildContext(doc, scene, e, predicted);
    const RelationContext gold_ctx = BuildContext(doc, scene, e, gold);
    auto earlier = [&](const std::vector<std::string>& ids) {
      return std::any_of(ids.begin(), ids.end(), [&](const std::string& id) {
        const Markable* m = doc.FindMarkable(id);
        return m != nullptr && m->utterance < e.utterance;
      });
    };
    for (RelationKind kind : e.canonical) {
      CaseRecord c;
      c.dialogue_id = doc.dialogue_id;
      c.expression_id = e.id;
      c.relation = kind;
      c.result = Evaluate(kind, ctx);
      c.strength = ClassifyStrength(e, doc.modifiers);
      c.inter_utterance_subject = earlier(e.subjects);
      c.inter_utterance_object = earlier(e.objects);
      if (e.objects.empty()) {
        c.object_status = ObjectStatus::kNoObject;
      } else {
        const std::optional<bool> ignorable = IgnorableObject(kind, gold_ctx);
        c.object_status = ignorable.value_or(false) ? ObjectStatus::kIgnorable
                                                    : ObjectStatus::kUnignorable;
      }
      if (const auto comparative = ComparativeValue(kind)) {
        if (c.result.valid && !ctx.subjects.empty() && !ctx.objects.empty()) {
          const Attribute attribute = comparative->second;
          c.difference_value = comparative->first;
          c.difference =
              std::fabs(MeanAttribute(ctx.subjects, attribute) -
                        MeanAttribute(ctx.objects, attribute));
        }
      }
      cases.push_back(std::move(c));
    }
  }
  return cases;
}

double Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0.0);
}

double Histogram::range() const {
  return attribute == Attribute::kColor ? kColorLevels : kSizeLevels;
}

double Histogram::bin_width() const {
  return range() / static_cast<double>(counts.size());
}

Histogram BuildHistogram(Attribute attribute, std::span<const double> values) {
  Histogram h;
  h.attribute = attribute;
  switch (attribute) {
    case Attribute::kColor:
      h.counts.assign(30, 0.0);
      break;
    case Attribute::kSize:
      h.counts.assign(kSizeLevels, 0.0);
      break;
    default:
      throw std::invalid_argument("histograms cover color or size");
  }
  const double width = h.bin_width();
  for (double v : values) {
    if (!(v >= 0.0 && v < h.range())) {
      throw std::invalid_argument("attribute value outside its scale");
    }
    const auto bin = std::min(static_cast<std::size_t>(v / width),
                              h.counts.size() - 1);
    h.counts[bin] += 1.0;
  }
  return h;
}

double DistributionDistance(const Histogram& a, const Histogram& b) {
  if (a.attribute != b.attribute || a.counts.size() != b.counts.size()) {
    throw std::invalid_argument("histograms cover different attributes");
  }
  const double total_a = a.total();
  const double total_b = b.total();
  if (total_a <= 0.0 || total_b <= 0.0) {
    throw std::invalid_argument("distance of an empty histogram");
  }
  // W1 on a line is the L1 distance between the cumulative distributions.
  double cdf_a = 0.0;
  double cdf_b = 0.0;
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < a.counts.size(); ++i) {
    cdf_a += a.counts[i] / total_a;
    cdf_b += b.counts[i] / total_b;
    area += std::fabs(cdf_a - cdf_b) * a.bin_width();
  }
  return area / a.range();
}

void CollectTermDistributions(const DialogueDocument& doc,
                              const ScenePair& scene,
                              const ReferentMap& referents,
                              Attribute attribute, const Lexicon& lexicon,
                              std::map<std::string, TermDistribution>& out) {
  for (const Markable& m : doc.markables) {
    if (m.utterance < 0 ||
        m.utterance >= static_cast<int>(doc.utterances.size())) {
      continue;
    }
    const Utterance& u = doc.utterances[m.utterance];
    std::vector<std::string> tokens;
    for (int i : m.span.indices()) {
      if (i >= 0 && i < static_cast<int>(u.tokens.size())) {
        tokens.push_back(u.tokens[i]);
      }
    }
    const auto term = ExtractAttributeTerm(tokens, attribute, lexicon);
    if (!term) continue;
    TermDistribution& dist = out[*term];
    dist.term = *term;
    ++dist.markables;
    auto it = referents.find(m.id);
    if (it == referents.end()) continue;
    const View& view = scene.ViewOf(u.speaker);
    for (int id : it->second) {
      if (const Entity* e = view.Find(id)) {
        dist.values.push_back(AttributeValue(*e, attribute));
      }
    }
  }
}

std::map<std::string, int> AssignBins(std::span<const std::string> ids,
                                      int bins) {
  if (bins <= 0) throw std::invalid_argument("bin count must be positive");
  std::vector<std::pair<std::uint64_t, std::string>> keyed;
  keyed.reserve(ids.size());
  for (const std::string& id : ids) keyed.emplace_back(StableHash(id), id);
  std::sort(keyed.begin(), keyed.end());
  std::map<std::string, int> assignment;
  const std::size_t n = keyed.size();
  for (std::size_t rank = 0; rank < n; ++rank) {
    const int bin = static_cast<int>(rank * bins / n);
    if (!assignment.emplace(keyed[rank].second, bin).second) {
      throw std::invalid_argument("duplicate id '" + keyed[rank].second + "'");
    }
  }
  return assignment;
}

SplitAssignment RotationSplit(std::span<const std::string> ids, int round) {
  if (round < 0 || round >= kSplitBins) {
    throw std::invalid_argument("round must be in [0, 9], got " +
                                std::to_string(round));
  }
  if (ids.size() < static_cast<std::size_t>(kSplitBins)) {
    throw std::invalid_argument("rotation split needs at least 10 items");
  }
  const int valid_bin = (round + 8) % kSplitBins;
  const int test_bin = (round + 9) % kSplitBins;
  SplitAssignment split;
  for (const auto& [id, bin] : AssignBins(ids)) {
    if (bin == valid_bin) {
      split.valid.push_back(id);
    } else if (bin == test_bin) {
      split.test.push_back(id);
    } else {
      split.train.push_back(id);
    }
  }
  return split;
}

}  // namespace spatialref
