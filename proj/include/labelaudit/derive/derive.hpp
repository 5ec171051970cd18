#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "labelaudit/classify/annotate.hpp"
#include "labelaudit/derive/registry.hpp"
#include "labelaudit/derive/rules.hpp"
#include "labelaudit/ingest/app_records.hpp"

namespace labelaudit::derive {

enum class FilterReason {
  Admissible,
  DoesNotStatement,
  WebsiteOnlyCollection,
  ThirdPartySeeOnly,
};

struct FilterDecision {
  bool admissible = true;
  FilterReason reason = FilterReason::Admissible;
};

std::string to_string(FilterReason reason);

// Exclusion filters, first match wins: (a) the segment claims not to engage
// in collection, (b) first-party collection identified on the website only,
// (c) third-party data seen but not collected on the first party's site/app.
FilterDecision admissible(const classify::SegmentAnnotation& annotation);

struct LabelEntry {
  ingest::LabelKey key;
  double uncertainty = 0.0;
  std::set<int> supporting_segments;
};

struct DerivedLabel {
  std::string app_id;
  std::map<ingest::LabelKey, LabelEntry> entries;

  bool has(PrivacyType t) const;
  std::set<PrivacyType> privacy_types() const;
  std::set<std::pair<PrivacyType, LabelPurpose>> type_purpose_pairs() const;
  std::set<std::pair<PrivacyType, DataCategory>> type_category_pairs() const;
};

// u = 1 - mean(F1 of the rule's practices) * mean(F1 of all attribute values
// the rule lists), rounded half-up to 2 decimals. Keywords contribute no F1.
double entry_uncertainty(const ConversionRule& rule, const F1Registry& registry);

// Entry-level uncertainty over the union of the rules that form the key
// (privacy type, plus purpose and category when present).
double entry_uncertainty(const ingest::LabelKey& key,
                         const ConversionRuleSet& rules,
                         const F1Registry& registry);

double round_half_up(double value, int decimals);

// Applies the rule set to one admissible segment: fired privacy types are
// cross-combined with fired purposes and categories from the same segment
// (track entries carry categories but never purposes).
std::vector<LabelEntry> derive_segment_entries(
    const classify::SegmentAnnotation& annotation,
    const std::string& segment_text, const ConversionRuleSet& rules,
    const F1Registry& registry);

struct SegmentRecord {
  classify::SegmentAnnotation annotation;
  std::string text;
};

// Union of entries over admissible segments. DataNotCollected is emitted as
// the sole entry only when pass 1 yields no collection entry and pass 2
// finds at least one collection-practice segment whose Does/Does Not output
// says DoesNot.
DerivedLabel derive_policy_label(const std::string& app_id,
                                 const std::vector<SegmentRecord>& segments,
                                 const ConversionRuleSet& rules,
                                 const F1Registry& registry);

}  // namespace labelaudit::derive
