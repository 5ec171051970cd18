#include "labelaudit/derive/rules.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "labelaudit/errors.hpp"

namespace labelaudit::derive {

using nlohmann::json;

namespace {

constexpr const char* kFP = "FirstPartyCollectionUse";
constexpr const char* kTP = "ThirdPartyCollectionSharing";

ConversionRule make_rule(TargetKind kind, std::string target,
                         std::vector<std::string> practices,
                         AttributeCondition condition, bool inferential = false,
                         std::vector<std::string> keywords = {}) {
  ConversionRule rule;
  rule.target = std::move(target);
  rule.kind = kind;
  rule.inferential = inferential;
  rule.required_practices = std::move(practices);
  rule.conditions.push_back(std::move(condition));
  rule.keywords = std::move(keywords);
  return rule;
}

AttributeCondition cond(Attribute attr, std::vector<std::string> values,
                        MatchMode mode = MatchMode::AnyOf) {
  return {attr, std::move(values), mode};
}

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::PrivacyType: return "privacy_type";
    case TargetKind::Purpose: return "purpose";
    case TargetKind::DataCategory: return "data_category";
  }
  return "?";
}

TargetKind parse_target_kind(const std::string& s) {
  if (s == "privacy_type") return TargetKind::PrivacyType;
  if (s == "purpose") return TargetKind::Purpose;
  if (s == "data_category") return TargetKind::DataCategory;
  throw SchemaError("unknown rule target kind: '" + s + "'");
}

}  // namespace

ConversionRuleSet ConversionRuleSet::defaults() {
  using TK = TargetKind;
  using A = Attribute;
  ConversionRuleSet set;

  // Privacy types.
  set.rules.push_back(make_rule(TK::PrivacyType, "DataLinkedToYou", {kFP, kTP},
                                cond(A::Identifiability, {value::kIdentifiable})));
  set.rules.push_back(
      make_rule(TK::PrivacyType, "DataNotLinkedToYou", {kFP, kTP},
                cond(A::Identifiability, {value::kAggregatedOrAnonymized})));
  set.rules.push_back(make_rule(TK::PrivacyType, "DataUsedToTrackYou", {kTP},
                                cond(A::Purpose, {value::kAdvertising}),
                                /*inferential=*/true));

  // Purposes.
  set.rules.push_back(make_rule(
      TK::Purpose, "AppFunctionality", {kFP, kTP},
      cond(A::Purpose, {value::kBasicServiceFeature, value::kAdditionalServiceFeature,
                        value::kServiceOperationAndSecurity})));
  set.rules.push_back(make_rule(TK::Purpose, "Analytics", {kFP, kTP},
                                cond(A::Purpose, {value::kAnalyticsResearch})));
  set.rules.push_back(make_rule(TK::Purpose, "DevelopersAdvertising", {kFP},
                                cond(A::Purpose, {value::kAdvertising})));
  set.rules.push_back(make_rule(TK::Purpose, "ThirdPartyAdvertising", {kTP},
                                cond(A::Purpose, {value::kAdvertising})));
  set.rules.push_back(
      make_rule(TK::Purpose, "ProductPersonalization", {kFP, kTP},
                cond(A::Purpose, {value::kPersonalizationCustomization})));
  set.rules.push_back(make_rule(
      TK::Purpose, "OtherPurposes", {kFP, kTP},
      cond(A::Purpose, {value::kMergerAcquisition, value::kLegalRequirement,
                        value::kUnspecified})));

  // Data categories, direct conversion.
  set.rules.push_back(make_rule(TK::DataCategory, "ContactInfo", {kFP, kTP},
                                cond(A::PersonalInformationType, {value::kContact})));
  set.rules.push_back(make_rule(TK::DataCategory, "Location", {kFP, kTP},
                                cond(A::PersonalInformationType, {value::kLocation})));
  set.rules.push_back(make_rule(TK::DataCategory, "FinancialInfo", {kFP, kTP},
                                cond(A::PersonalInformationType, {value::kFinancial})));
  set.rules.push_back(make_rule(
      TK::DataCategory, "Identifiers", {kFP, kTP},
      cond(A::PersonalInformationType,
           {value::kCookiesAndTrackingElements, value::kIPAddressAndDeviceIDs})));
  set.rules.push_back(
      make_rule(TK::DataCategory, "UsageData", {kFP, kTP},
                cond(A::PersonalInformationType, {value::kUserOnlineActivities})));
  set.rules.push_back(make_rule(
      TK::DataCategory, "UserContent", {kFP, kTP},
      cond(A::PersonalInformationType, {value::kUserProfile, value::kSocialMediaData})));
  set.rules.push_back(make_rule(TK::DataCategory, "HealthAndFitness", {kFP, kTP},
                                cond(A::PersonalInformationType, {value::kHealth})));
  set.rules.push_back(
      make_rule(TK::DataCategory, "BrowsingHistory", {kTP},
                cond(A::PersonalInformationType, {value::kUserOnlineActivities})));

  // Data categories, inferential conversion.
  set.rules.push_back(make_rule(
      TK::DataCategory, "Diagnostics", {kFP, kTP},
      cond(A::PersonalInformationType,
           {value::kComputerInformation, value::kIPAddressAndDeviceIDs}),
      /*inferential=*/true));
  set.rules.push_back(make_rule(
      TK::DataCategory, "Contacts", {kFP, kTP},
      cond(A::PersonalInformationType, {value::kSocialMediaData}),
      /*inferential=*/true,
      {"contact", "friend", "address book", "phone book"}));
  set.rules.push_back(make_rule(
      TK::DataCategory, "Purchases", {kFP, kTP},
      cond(A::PersonalInformationType,
           {value::kFinancial, value::kUserOnlineActivities}, MatchMode::AllOf),
      /*inferential=*/true));
  set.rules.push_back(make_rule(
      TK::DataCategory, "SearchHistory", {kFP},
      cond(A::PersonalInformationType, {value::kUserOnlineActivities}),
      /*inferential=*/true, {"search"}));
  set.rules.push_back(make_rule(
      TK::DataCategory, "SensitiveInfo", {kFP, kTP},
      cond(A::PersonalInformationType, {value::kDemographic}),
      /*inferential=*/true,
      {"race", "racial", "ethnic", "ethnicity", "sexual orientation",
       "sexual preference", "pregnancy", "pregnant", "childbirth",
       "child birth", "child-birth", "disability", "religion", "religious",
       "religious belief", "trade union", "union member", "politics",
       "political", "genetic", "genetic information", "biometric"}));

  set.data_not_collected =
      make_rule(TK::PrivacyType, "DataNotCollected", {kFP, kTP},
                cond(A::DoesDoesNot, {value::kDoesNot}));

  return set;
}

namespace {

json rule_to_json(const ConversionRule& rule) {
  json conditions = json::array();
  for (const auto& c : rule.conditions) {
    conditions.push_back({{"attribute", labelaudit::to_string(c.attribute)},
                          {"values", c.values},
                          {"match", c.mode == MatchMode::AllOf ? "all_of" : "any_of"}});
  }
  json j;
  j["target"] = rule.target;
  j["kind"] = to_string(rule.kind);
  j["inferential"] = rule.inferential;
  j["practices"] = rule.required_practices;
  j["conditions"] = conditions;
  if (!rule.keywords.empty()) j["keywords"] = rule.keywords;
  return j;
}

ConversionRule rule_from_json(const json& j) {
  ConversionRule rule;
  rule.target = j.at("target").get<std::string>();
  rule.kind = parse_target_kind(j.at("kind").get<std::string>());
  rule.inferential = j.value("inferential", false);
  rule.required_practices = j.at("practices").get<std::vector<std::string>>();
  for (const json& c : j.at("conditions")) {
    AttributeCondition condition;
    condition.attribute = parse_attribute(c.at("attribute").get<std::string>());
    condition.values = c.at("values").get<std::vector<std::string>>();
    std::string mode = c.value("match", "any_of");
    if (mode == "all_of") {
      condition.mode = MatchMode::AllOf;
    } else if (mode == "any_of") {
      condition.mode = MatchMode::AnyOf;
    } else {
      throw SchemaError("unknown match mode: '" + mode + "'");
    }
    rule.conditions.push_back(std::move(condition));
  }
  if (j.contains("keywords")) {
    rule.keywords = j.at("keywords").get<std::vector<std::string>>();
  }
  return rule;
}

}  // namespace

ConversionRuleSet ConversionRuleSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open rules file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed rules file: " + path);
  ConversionRuleSet set;
  for (const json& r : j.at("rules")) set.rules.push_back(rule_from_json(r));
  set.data_not_collected = rule_from_json(j.at("data_not_collected"));
  validate_rules(set);
  return set;
}

void ConversionRuleSet::save(const std::string& path) const {
  json rules_json = json::array();
  for (const auto& r : rules) rules_json.push_back(rule_to_json(r));
  json j;
  j["rules"] = rules_json;
  j["data_not_collected"] = rule_to_json(data_not_collected);
  std::ofstream out(path);
  if (!out) throw IOFailure("cannot write rules file: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IOFailure("write failed: " + path);
}

const ConversionRule* ConversionRuleSet::find(TargetKind kind,
                                              const std::string& target) const {
  if (kind == data_not_collected.kind && target == data_not_collected.target) {
    return &data_not_collected;
  }
  for (const auto& rule : rules) {
    if (rule.kind == kind && rule.target == target) return &rule;
  }
  return nullptr;
}

void validate_rules(const ConversionRuleSet& set) {
  auto check = [](const ConversionRule& rule) {
    if (rule.required_practices.empty()) {
      throw RuleConfigError("rule '" + rule.target + "' lists no practices");
    }
    if (!rule.keywords.empty() && !rule.inferential) {
      throw RuleConfigError("rule '" + rule.target +
                            "' carries keywords but is not inferential");
    }
    for (const auto& practice : rule.required_practices) {
      if (!is_known_practice(practice)) {
        throw RuleConfigError("rule '" + rule.target + "' references unknown practice '" +
                              practice + "'");
      }
    }
    for (const auto& condition : rule.conditions) {
      for (const auto& value : condition.values) {
        if (!is_known_attribute_value(condition.attribute, value)) {
          throw RuleConfigError("rule '" + rule.target + "' references unknown value '" +
                                value + "'");
        }
      }
    }
  };
  for (const auto& rule : set.rules) check(rule);
  check(set.data_not_collected);
}

namespace {

std::string normalize_for_match(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

}  // namespace

bool contains_phrase(const std::string& text, const std::string& phrase) {
  std::string haystack = normalize_for_match(text);
  std::string needle = normalize_for_match(phrase);
  if (needle.empty()) return false;
  size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !is_word_char(haystack[pos - 1]);
    size_t end = pos + needle.size();
    bool right_ok = end >= haystack.size() || !is_word_char(haystack[end]);
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

bool rule_fires(const ConversionRule& rule,
                const classify::SegmentAnnotation& annotation,
                const std::string& segment_text) {
  bool practice_hit = std::any_of(
      rule.required_practices.begin(), rule.required_practices.end(),
      [&](const std::string& p) { return annotation.has_practice(p); });
  if (!practice_hit) return false;

  for (const auto& condition : rule.conditions) {
    auto it = annotation.attributes.find(condition.attribute);
    const std::set<std::string>* predicted =
        it != annotation.attributes.end() ? &it->second : nullptr;
    auto has = [&](const std::string& v) {
      return predicted != nullptr && predicted->count(v) > 0;
    };
    bool ok = condition.mode == MatchMode::AllOf
                  ? std::all_of(condition.values.begin(), condition.values.end(), has)
                  : std::any_of(condition.values.begin(), condition.values.end(), has);
    if (!ok) return false;
  }

  if (!rule.keywords.empty()) {
    bool keyword_hit =
        std::any_of(rule.keywords.begin(), rule.keywords.end(),
                    [&](const std::string& k) { return contains_phrase(segment_text, k); });
    if (!keyword_hit) return false;
  }
  return true;
}

}  // namespace labelaudit::derive
