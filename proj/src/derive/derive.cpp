#include "labelaudit/derive/derive.hpp"

#include <cmath>

#include "labelaudit/errors.hpp"

namespace labelaudit::derive {

std::string to_string(FilterReason reason) {
  switch (reason) {
    case FilterReason::Admissible: return "Admissible";
    case FilterReason::DoesNotStatement: return "DoesNotStatement";
    case FilterReason::WebsiteOnlyCollection: return "WebsiteOnlyCollection";
    case FilterReason::ThirdPartySeeOnly: return "ThirdPartySeeOnly";
  }
  return "?";
}

FilterDecision admissible(const classify::SegmentAnnotation& annotation) {
  if (annotation.predicts(Attribute::DoesDoesNot, value::kDoesNot)) {
    return {false, FilterReason::DoesNotStatement};
  }
  if (annotation.has_practice(practice::kFirstPartyCollectionUse) &&
      annotation.predicts(Attribute::ActionFirstParty, value::kCollectOnWebsite) &&
      !annotation.predicts(Attribute::ActionFirstParty, value::kCollectInMobileApp)) {
    return {false, FilterReason::WebsiteOnlyCollection};
  }
  if (annotation.has_practice(practice::kThirdPartyCollectionSharing) &&
      annotation.predicts(Attribute::ActionThirdParty, value::kSee) &&
      !annotation.predicts(Attribute::ActionThirdParty,
                           value::kCollectOnFirstPartyWebsiteApp)) {
    return {false, FilterReason::ThirdPartySeeOnly};
  }
  return {true, FilterReason::Admissible};
}

bool DerivedLabel::has(PrivacyType t) const {
  for (const auto& [key, _] : entries) {
    if (key.privacy_type == t) return true;
  }
  return false;
}

std::set<PrivacyType> DerivedLabel::privacy_types() const {
  std::set<PrivacyType> out;
  for (const auto& [key, _] : entries) out.insert(key.privacy_type);
  return out;
}

std::set<std::pair<PrivacyType, LabelPurpose>> DerivedLabel::type_purpose_pairs()
    const {
  std::set<std::pair<PrivacyType, LabelPurpose>> out;
  for (const auto& [key, _] : entries) {
    if (key.purpose) out.insert({key.privacy_type, *key.purpose});
  }
  return out;
}

std::set<std::pair<PrivacyType, DataCategory>> DerivedLabel::type_category_pairs()
    const {
  std::set<std::pair<PrivacyType, DataCategory>> out;
  for (const auto& [key, _] : entries) {
    if (key.category) out.insert({key.privacy_type, *key.category});
  }
  return out;
}

double round_half_up(double value, int decimals) {
  double scale = std::pow(10.0, decimals);
  // The epsilon absorbs binary representation error in values that land
  // exactly on a .5 boundary in decimal.
  return std::floor(value * scale + 0.5 + 1e-9) / scale;
}

namespace {

struct UncertaintyParts {
  std::set<std::string> practices;
  std::set<std::pair<Attribute, std::string>> values;
};

void accumulate(const ConversionRule& rule, UncertaintyParts& parts) {
  parts.practices.insert(rule.required_practices.begin(),
                         rule.required_practices.end());
  for (const auto& condition : rule.conditions) {
    for (const auto& value : condition.values) {
      parts.values.insert({condition.attribute, value});
    }
  }
}

double uncertainty_from_parts(const UncertaintyParts& parts,
                              const F1Registry& registry) {
  if (parts.practices.empty()) {
    throw RuleConfigError("uncertainty requires at least one practice");
  }
  double practice_sum = 0.0;
  for (const auto& p : parts.practices) {
    practice_sum += registry.f1(Attribute::SegmentPractices, p);
  }
  double practice_mean = practice_sum / static_cast<double>(parts.practices.size());

  double value_mean = 1.0;
  if (!parts.values.empty()) {
    double value_sum = 0.0;
    for (const auto& [attribute, value] : parts.values) {
      value_sum += registry.f1(attribute, value);
    }
    value_mean = value_sum / static_cast<double>(parts.values.size());
  }
  return round_half_up(1.0 - practice_mean * value_mean, 2);
}

}  // namespace

double entry_uncertainty(const ConversionRule& rule, const F1Registry& registry) {
  UncertaintyParts parts;
  accumulate(rule, parts);
  return uncertainty_from_parts(parts, registry);
}

double entry_uncertainty(const ingest::LabelKey& key,
                         const ConversionRuleSet& rules,
                         const F1Registry& registry) {
  UncertaintyParts parts;
  const ConversionRule* type_rule =
      rules.find(TargetKind::PrivacyType, to_string(key.privacy_type));
  if (type_rule == nullptr) {
    throw RuleConfigError("no rule for privacy type " + to_string(key.privacy_type));
  }
  accumulate(*type_rule, parts);
  if (key.purpose) {
    const ConversionRule* purpose_rule =
        rules.find(TargetKind::Purpose, to_string(*key.purpose));
    if (purpose_rule == nullptr) {
      throw RuleConfigError("no rule for purpose " + to_string(*key.purpose));
    }
    accumulate(*purpose_rule, parts);
  }
  if (key.category) {
    const ConversionRule* category_rule =
        rules.find(TargetKind::DataCategory, to_string(*key.category));
    if (category_rule == nullptr) {
      throw RuleConfigError("no rule for category " + to_string(*key.category));
    }
    accumulate(*category_rule, parts);
  }
  return uncertainty_from_parts(parts, registry);
}

std::vector<LabelEntry> derive_segment_entries(
    const classify::SegmentAnnotation& annotation,
    const std::string& segment_text, const ConversionRuleSet& rules,
    const F1Registry& registry) {
  std::vector<PrivacyType> fired_types;
  std::vector<LabelPurpose> fired_purposes;
  std::vector<DataCategory> fired_categories;
  for (const auto& rule : rules.rules) {
    if (!rule_fires(rule, annotation, segment_text)) continue;
    switch (rule.kind) {
      case TargetKind::PrivacyType:
        fired_types.push_back(parse_privacy_type(rule.target));
        break;
      case TargetKind::Purpose:
        fired_purposes.push_back(parse_label_purpose(rule.target));
        break;
      case TargetKind::DataCategory:
        fired_categories.push_back(parse_data_category(rule.target));
        break;
    }
  }

  std::vector<std::optional<LabelPurpose>> purposes;
  if (fired_purposes.empty()) {
    purposes.push_back(std::nullopt);
  } else {
    for (LabelPurpose p : fired_purposes) purposes.emplace_back(p);
  }
  std::vector<std::optional<DataCategory>> categories;
  if (fired_categories.empty()) {
    categories.push_back(std::nullopt);
  } else {
    for (DataCategory c : fired_categories) categories.emplace_back(c);
  }

  std::vector<LabelEntry> out;
  for (PrivacyType type : fired_types) {
    if (type == PrivacyType::DataUsedToTrackYou) {
      // Track entries carry the segment's categories but no purpose.
      for (const auto& category : categories) {
        LabelEntry entry;
        entry.key = {type, std::nullopt, category};
        entry.uncertainty = entry_uncertainty(entry.key, rules, registry);
        entry.supporting_segments.insert(annotation.segment_index);
        out.push_back(std::move(entry));
      }
      continue;
    }
    for (const auto& purpose : purposes) {
      for (const auto& category : categories) {
        LabelEntry entry;
        entry.key = {type, purpose, category};
        entry.uncertainty = entry_uncertainty(entry.key, rules, registry);
        entry.supporting_segments.insert(annotation.segment_index);
        out.push_back(std::move(entry));
      }
    }
  }
  return out;
}

DerivedLabel derive_policy_label(const std::string& app_id,
                                 const std::vector<SegmentRecord>& segments,
                                 const ConversionRuleSet& rules,
                                 const F1Registry& registry) {
  DerivedLabel label;
  label.app_id = app_id;

  // Pass 1: union of entries over admissible segments.
  for (const auto& segment : segments) {
    if (!admissible(segment.annotation).admissible) continue;
    for (LabelEntry& entry :
         derive_segment_entries(segment.annotation, segment.text, rules, registry)) {
      auto [it, inserted] = label.entries.try_emplace(entry.key, entry);
      if (!inserted) {
        it->second.supporting_segments.insert(entry.supporting_segments.begin(),
                                              entry.supporting_segments.end());
      }
    }
  }
  if (!label.entries.empty()) return label;

  // Pass 2: at least one collection-practice segment explicitly disclaiming
  // collection.
  LabelEntry dnc;
  dnc.key = {PrivacyType::DataNotCollected, std::nullopt, std::nullopt};
  bool found = false;
  for (const auto& segment : segments) {
    const auto& a = segment.annotation;
    bool collection_practice =
        a.has_practice(practice::kFirstPartyCollectionUse) ||
        a.has_practice(practice::kThirdPartyCollectionSharing);
    if (collection_practice && a.predicts(Attribute::DoesDoesNot, value::kDoesNot)) {
      dnc.supporting_segments.insert(a.segment_index);
      found = true;
    }
  }
  if (found) {
    dnc.uncertainty = entry_uncertainty(rules.data_not_collected, registry);
    label.entries.emplace(dnc.key, std::move(dnc));
  }
  return label;
}

}  // namespace labelaudit::derive
