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

#ifndef SPATIALREF_METRICS_H_
#define SPATIALREF_METRICS_H_

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spatialref/annotation.h"
#include "spatialref/lexicon.h"
#include "spatialref/relations.h"
#include "spatialref/scene.h"

namespace spatialref {

// ---------------------------------------------------------------------------
// Reference resolution accuracy.

// A referent set for one markable. `key` identifies the markable across
// files (the pipeline uses "<dialogue_id>/<markable_id>").
struct ReferentLabel {
  std::string key;
  std::vector<int> positions;  // entity positions in the speaker's view
};

// Fraction of the 7 binary per-entity decisions that match gold, over all
// markables. Throws std::invalid_argument when the inputs are empty or the
// keys do not align one-to-one.
double EntityAccuracy(std::span<const ReferentLabel> predictions,
                      std::span<const ReferentLabel> golds);

// Fraction of markables whose predicted set equals the gold set.
double ExactMatch(std::span<const ReferentLabel> predictions,
                  std::span<const ReferentLabel> golds);

// ---------------------------------------------------------------------------
// Agreement.

struct AgreementReport {
  double percent_agreement = 0.0;  // [0, 100]
  double kappa = 0.0;              // [-1, 1]
};

// Unweighted Cohen's kappa over nominal labels. When chance agreement is 1
// (both raters use one identical label throughout) kappa is reported as 1.
template <typename Label>
AgreementReport CohenKappa(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("label sequences differ in length");
  }
  if (a.empty()) throw std::invalid_argument("no labels to compare");
  const double n = static_cast<double>(a.size());
  std::map<Label, double> marginal_a;
  std::map<Label, double> marginal_b;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    marginal_a[a[i]] += 1.0;
    marginal_b[b[i]] += 1.0;
    if (a[i] == b[i]) ++agree;
  }
  const double observed = static_cast<double>(agree) / n;
  double chance = 0.0;
  for (const auto& [label, count] : marginal_a) {
    auto it = marginal_b.find(label);
    if (it != marginal_b.end()) chance += (count / n) * (it->second / n);
  }
  AgreementReport report;
  report.percent_agreement = 100.0 * observed;
  report.kappa = chance >= 1.0 ? 1.0 : (observed - chance) / (1.0 - chance);
  return report;
}

template <typename Label>
AgreementReport CohenKappa(const std::vector<Label>& a,
                           const std::vector<Label>& b) {
  return CohenKappa(std::span<const Label>(a), std::span<const Label>(b));
}

struct SpanRef {
  int utterance = 0;
  TokenSpan span;
};

enum class TokenAgreementMode {
  kAllTokens,    // every token inside a span is labeled 1
  kStartTokens,  // only the first token of each span is labeled 1
};

// Labels every token of the dialogue in/out for each annotator and compares
// the two labelings with CohenKappa. Throws std::invalid_argument when a
// span leaves its utterance.
AgreementReport TokenAgreement(std::span<const SpanRef> spans_a,
                               std::span<const SpanRef> spans_b,
                               std::span<const Utterance> utterances,
                               TokenAgreementMode mode);

// ---------------------------------------------------------------------------
// Relation test cases and aggregated tables.

enum class ObjectStatus { kNoObject, kIgnorable, kUnignorable };

enum class DifferenceValue { kXY, kColor, kSize };

std::string_view DifferenceValueName(DifferenceValue value);

// One (expression, canonical relation) test outcome with the metadata the
// stratified tables need.
struct CaseRecord {
  std::string dialogue_id;
  std::string expression_id;
  RelationKind relation = RelationKind::kLeft;
  TestResult result;
  ModificationStrength strength = ModificationStrength::kNeutral;
  bool inter_utterance_subject = false;
  bool inter_utterance_object = false;
  ObjectStatus object_status = ObjectStatus::kNoObject;
  // |mean(S.v) - mean(O.v)| for the pairwise comparatives, set only when the
  // prediction is valid with non-empty subjects and objects.
  std::optional<DifferenceValue> difference_value;
  std::optional<double> difference;
};

enum class Grouping { kRelation, kCategory, kStrength, kFactor };

std::string_view GroupingName(Grouping grouping);
std::optional<Grouping> ParseGrouping(std::string_view name);

struct AnalysisRow {
  std::string group;  // category for relation rows, grouping name otherwise
  std::string key;
  int cases = 0;
  int satisfied = 0;
  int valid = 0;
  double satisfy_rate = 0.0;  // percent of all cases
  double valid_rate = 0.0;    // percent of all cases
};

struct AnalysisTable {
  Grouping grouping = Grouping::kRelation;
  std::vector<AnalysisRow> rows;
};

// Relation grouping always lists the 24 relations in reporting order;
// the other groupings list their classes followed by an "all" row. Factor
// classes may overlap (inter-utterance flags); no object, ignorable and
// unignorable partition the cases.
AnalysisTable SatisfyValidTable(std::span<const CaseRecord> cases,
                                Grouping grouping);

std::string ToCsv(const AnalysisTable& table);

// Whether the relation still holds on gold referents once the objects are
// dropped. nullopt when the relation has no object-free form.
std::optional<bool> IgnorableObject(RelationKind kind,
                                    const RelationContext& gold);

struct DifferenceCell {
  DifferenceValue value = DifferenceValue::kXY;
  ModificationStrength strength = ModificationStrength::kNeutral;
  std::optional<double> mean_difference;  // nullopt when no valid cases
  int valid_count = 0;
};

// Nine cells: (xy, color, size) x (strong, neutral, weak).
std::vector<DifferenceCell> AbsoluteDifferenceTable(
    std::span<const CaseRecord> cases);

std::string DifferenceCsv(std::span<const DifferenceCell> cells);

// Per-case records; aggregating them reproduces SatisfyValidTable exactly.
std::string CasesCsv(std::span<const CaseRecord> cases);

// Maps markable ids to referent entity ids.
using ReferentMap = std::map<std::string, std::vector<int>>;

ReferentMap GoldReferents(const DialogueDocument& doc);

// Builds the relation context for an expression from a referent source.
// Markables missing from `referents` contribute no entities.
RelationContext BuildContext(const DialogueDocument& doc,
                             const ScenePair& scene,
                             const SpatialExpression& expression,
                             const ReferentMap& referents);

// Runs every canonical relation of every testable expression against
// `predicted`; ignorability is always judged on gold referents.
std::vector<CaseRecord> CollectCases(const DialogueDocument& doc,
                                     const ScenePair& scene,
                                     const ReferentMap& predicted);

// ---------------------------------------------------------------------------
// Attribute distributions.

// Raw counts in 30 bins over the color scale or 6 over the size scale.
struct Histogram {
  Attribute attribute = Attribute::kColor;
  std::vector<double> counts;

  double total() const;
  double bin_width() const;
  double range() const;
};

// attribute must be kColor or kSize; values outside the scale throw
// std::invalid_argument.
Histogram BuildHistogram(Attribute attribute, std::span<const double> values);

// Wasserstein-1 distance between the normalized histograms on bin centers,
// divided by the attribute range. Throws when either histogram is empty or
// the attributes differ.
double DistributionDistance(const Histogram& a, const Histogram& b);

// Attribute values of the referents of every markable whose tokens mention
// `term` (as canonicalized by the lexicon).
struct TermDistribution {
  std::string term;
  int markables = 0;
  std::vector<double> values;
};

// Appends to `out` the referent values of markables in `doc` that carry an
// attribute term, keyed by term. Referents come from `referents`.
void CollectTermDistributions(const DialogueDocument& doc,
                              const ScenePair& scene,
                              const ReferentMap& referents,
                              Attribute attribute, const Lexicon& lexicon,
                              std::map<std::string, TermDistribution>& out);

// ---------------------------------------------------------------------------
// Rotation split.

inline constexpr int kSplitBins = 10;

struct SplitAssignment {
  std::vector<std::string> train;
  std::vector<std::string> valid;
  std::vector<std::string> test;
};

// Bin index for each id: ids are ordered by a stable hash and dealt into
// `bins` equal-sized bins, so the result does not depend on input order.
std::map<std::string, int> AssignBins(std::span<const std::string> ids,
                                      int bins = kSplitBins);

// Round r trains on bins r..r+7, validates on r+8 and tests on r+9 (mod 10).
// Throws std::invalid_argument for r outside [0, 9], fewer than 10 ids, or
// duplicate ids. Each part is sorted.
SplitAssignment RotationSplit(std::span<const std::string> ids, int round);

}  // namespace spatialref

#endif  // SPATIALREF_METRICS_H_
