#include "labelaudit/derive/registry.hpp"

#include <fstream>

#include <json.hpp>

#include "labelaudit/errors.hpp"

namespace labelaudit::derive {

using nlohmann::json;

F1Registry F1Registry::defaults() {
  F1Registry r;
  auto set = [&r](Attribute a, const char* value, double f1) {
    r.set(a, value, f1);
  };

  set(Attribute::SegmentPractices, practice::kFirstPartyCollectionUse, 0.80);
  set(Attribute::SegmentPractices, practice::kThirdPartyCollectionSharing, 0.86);

  set(Attribute::Identifiability, value::kIdentifiable, 0.75);
  set(Attribute::Identifiability, value::kAggregatedOrAnonymized, 0.85);

  set(Attribute::DoesDoesNot, value::kDoesNot, 0.84);

  set(Attribute::Purpose, value::kAdditionalServiceFeature, 0.80);
  set(Attribute::Purpose, value::kAdvertising, 0.86);
  set(Attribute::Purpose, value::kAnalyticsResearch, 0.85);
  set(Attribute::Purpose, value::kBasicServiceFeature, 0.80);
  set(Attribute::Purpose, value::kLegalRequirement, 0.87);
  set(Attribute::Purpose, value::kMarketing, 0.83);
  set(Attribute::Purpose, value::kMergerAcquisition, 0.93);
  set(Attribute::Purpose, value::kPersonalizationCustomization, 0.82);
  set(Attribute::Purpose, value::kServiceOperationAndSecurity, 0.83);
  set(Attribute::Purpose, value::kUnspecified, 0.76);

  set(Attribute::PersonalInformationType, value::kComputerInformation, 0.92);
  set(Attribute::PersonalInformationType, value::kContact, 0.91);
  set(Attribute::PersonalInformationType, value::kCookiesAndTrackingElements, 0.91);
  set(Attribute::PersonalInformationType, value::kDemographic, 0.88);
  set(Attribute::PersonalInformationType, value::kFinancial, 0.92);
  set(Attribute::PersonalInformationType, value::kGenericPersonalInformation, 0.81);
  set(Attribute::PersonalInformationType, value::kHealth, 0.74);
  set(Attribute::PersonalInformationType, value::kIPAddressAndDeviceIDs, 0.92);
  set(Attribute::PersonalInformationType, value::kLocation, 0.88);
  set(Attribute::PersonalInformationType, value::kPersonalIdentifier, 0.83);
  set(Attribute::PersonalInformationType, value::kSocialMediaData, 0.86);
  set(Attribute::PersonalInformationType, value::kSurveyData, 0.88);
  set(Attribute::PersonalInformationType, value::kUserOnlineActivities, 0.88);
  set(Attribute::PersonalInformationType, value::kUserProfile, 0.86);
  set(Attribute::PersonalInformationType, value::kUnspecified, 0.81);

  set(Attribute::AudienceType, value::kChildren, 0.99);

  set(Attribute::ActionFirstParty, value::kCollectOnWebsite, 0.67);
  set(Attribute::ActionFirstParty, value::kCollectInMobileApp, 0.78);

  set(Attribute::ActionThirdParty, value::kCollectOnFirstPartyWebsiteApp, 0.82);
  set(Attribute::ActionThirdParty, value::kSee, 0.79);

  return r;
}

F1Registry F1Registry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open registry file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw SchemaError("malformed registry file: " + path);
  }
  F1Registry r;
  for (const auto& [attr_name, values] : j.items()) {
    Attribute attr = parse_attribute(attr_name);
    for (const auto& [value, f1] : values.items()) {
      if (!f1.is_number()) throw SchemaError("non-numeric F1 for " + value);
      double score = f1.get<double>();
      if (score <= 0.0 || score > 1.0) {
        throw SchemaError("F1 for " + value + " outside (0, 1]");
      }
      r.set(attr, value, score);
    }
  }
  return r;
}

void F1Registry::save(const std::string& path) const {
  json j = json::object();
  for (const auto& [key, f1] : values_) {
    j[to_string(key.first)][key.second] = f1;
  }
  std::ofstream out(path);
  if (!out) throw IOFailure("cannot write registry file: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IOFailure("write failed: " + path);
}

double F1Registry::f1(Attribute attribute, const std::string& value) const {
  auto found = find(attribute, value);
  if (!found) {
    throw RuleConfigError("no F1 registered for " + to_string(attribute) + "/" +
                          value);
  }
  return *found;
}

std::optional<double> F1Registry::find(Attribute attribute,
                                       const std::string& value) const {
  auto it = values_.find({attribute, value});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void F1Registry::set(Attribute attribute, const std::string& value, double f1) {
  values_[{attribute, value}] = f1;
}

}  // namespace labelaudit::derive
