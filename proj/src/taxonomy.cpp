#include "labelaudit/taxonomy.hpp"

#include <algorithm>

#include "labelaudit/errors.hpp"

namespace labelaudit {

std::string to_string(PrivacyType t) {
  switch (t) {
    case PrivacyType::DataUsedToTrackYou: return "DataUsedToTrackYou";
    case PrivacyType::DataLinkedToYou: return "DataLinkedToYou";
    case PrivacyType::DataNotLinkedToYou: return "DataNotLinkedToYou";
    case PrivacyType::DataNotCollected: return "DataNotCollected";
  }
  return "?";
}

std::string to_string(LabelPurpose p) {
  switch (p) {
    case LabelPurpose::AppFunctionality: return "AppFunctionality";
    case LabelPurpose::Analytics: return "Analytics";
    case LabelPurpose::DevelopersAdvertising: return "DevelopersAdvertising";
    case LabelPurpose::ThirdPartyAdvertising: return "ThirdPartyAdvertising";
    case LabelPurpose::ProductPersonalization: return "ProductPersonalization";
    case LabelPurpose::OtherPurposes: return "OtherPurposes";
  }
  return "?";
}

std::string to_string(DataCategory c) {
  switch (c) {
    case DataCategory::ContactInfo: return "ContactInfo";
    case DataCategory::Location: return "Location";
    case DataCategory::FinancialInfo: return "FinancialInfo";
    case DataCategory::Identifiers: return "Identifiers";
    case DataCategory::UsageData: return "UsageData";
    case DataCategory::UserContent: return "UserContent";
    case DataCategory::HealthAndFitness: return "HealthAndFitness";
    case DataCategory::BrowsingHistory: return "BrowsingHistory";
    case DataCategory::Diagnostics: return "Diagnostics";
    case DataCategory::Contacts: return "Contacts";
    case DataCategory::Purchases: return "Purchases";
    case DataCategory::SearchHistory: return "SearchHistory";
    case DataCategory::SensitiveInfo: return "SensitiveInfo";
  }
  return "?";
}

std::string to_string(Attribute a) {
  switch (a) {
    case Attribute::SegmentPractices: return "SegmentPractices";
    case Attribute::DoesDoesNot: return "DoesDoesNot";
    case Attribute::Identifiability: return "Identifiability";
    case Attribute::Purpose: return "Purpose";
    case Attribute::PersonalInformationType: return "PersonalInformationType";
    case Attribute::AudienceType: return "AudienceType";
    case Attribute::ActionFirstParty: return "ActionFirstParty";
    case Attribute::ActionThirdParty: return "ActionThirdParty";
  }
  return "?";
}

std::string to_string(PriceModel p) {
  switch (p) {
    case PriceModel::Free: return "Free";
    case PriceModel::FreeWithIAP: return "FreeWithIAP";
    case PriceModel::Paid: return "Paid";
    case PriceModel::PaidWithIAP: return "PaidWithIAP";
  }
  return "?";
}

std::string to_string(ContentRating r) {
  switch (r) {
    case ContentRating::R4Plus: return "4+";
    case ContentRating::R9Plus: return "9+";
    case ContentRating::R12Plus: return "12+";
    case ContentRating::R17Plus: return "17+";
  }
  return "?";
}

namespace {

template <typename Enum, size_t N>
Enum parse_enum(std::string_view s, const std::array<Enum, N>& all,
                const char* what) {
  for (Enum e : all) {
    if (to_string(e) == s) return e;
  }
  throw SchemaError(std::string("unknown ") + what + ": '" + std::string(s) + "'");
}

}  // namespace

PrivacyType parse_privacy_type(std::string_view s) {
  return parse_enum(s, kAllPrivacyTypes, "privacy type");
}

LabelPurpose parse_label_purpose(std::string_view s) {
  return parse_enum(s, kAllLabelPurposes, "purpose");
}

DataCategory parse_data_category(std::string_view s) {
  return parse_enum(s, kAllDataCategories, "data category");
}

Attribute parse_attribute(std::string_view s) {
  return parse_enum(s, kAllAttributes, "attribute");
}

PriceModel parse_price_model(std::string_view s) {
  return parse_enum(s, kAllPriceModels, "price model");
}

ContentRating parse_content_rating(std::string_view s) {
  return parse_enum(s, kAllContentRatings, "content rating");
}

const std::vector<std::string>& practice_vocabulary() {
  static const std::vector<std::string> kPractices = {
      practice::kFirstPartyCollectionUse,
      practice::kThirdPartyCollectionSharing,
      practice::kUserChoiceControl,
      practice::kUserAccessEditDeletion,
      practice::kDataRetention,
      practice::kDataSecurity,
      practice::kPolicyChange,
      practice::kDoNotTrack,
      practice::kInternationalSpecificAudiences,
      practice::kOther,
  };
  return kPractices;
}

const std::vector<std::string>& attribute_vocabulary(Attribute attribute) {
  static const std::vector<std::string> kDoesDoesNot = {value::kDoes,
                                                        value::kDoesNot};
  static const std::vector<std::string> kIdentifiability = {
      value::kIdentifiable, value::kAggregatedOrAnonymized, value::kUnspecified};
  static const std::vector<std::string> kPurpose = {
      value::kAdditionalServiceFeature,
      value::kAdvertising,
      value::kAnalyticsResearch,
      value::kBasicServiceFeature,
      value::kLegalRequirement,
      value::kMarketing,
      value::kMergerAcquisition,
      value::kPersonalizationCustomization,
      value::kServiceOperationAndSecurity,
      value::kUnspecified,
  };
  static const std::vector<std::string> kPersonalInformationType = {
      value::kComputerInformation,
      value::kContact,
      value::kCookiesAndTrackingElements,
      value::kDemographic,
      value::kFinancial,
      value::kGenericPersonalInformation,
      value::kHealth,
      value::kIPAddressAndDeviceIDs,
      value::kLocation,
      value::kPersonalIdentifier,
      value::kSocialMediaData,
      value::kSurveyData,
      value::kUserOnlineActivities,
      value::kUserProfile,
      value::kUnspecified,
  };
  static const std::vector<std::string> kAudienceType = {
      value::kChildren, value::kCaliforniansEuropeans, value::kUnspecified};
  static const std::vector<std::string> kActionFirstParty = {
      value::kCollectOnWebsite, value::kCollectInMobileApp, value::kUnspecified};
  static const std::vector<std::string> kActionThirdParty = {
      value::kCollectOnFirstPartyWebsiteApp, value::kReceiveShared, value::kSee,
      value::kTrackOnFirstPartyWebsiteApp, value::kUnspecified};

  switch (attribute) {
    case Attribute::SegmentPractices: return practice_vocabulary();
    case Attribute::DoesDoesNot: return kDoesDoesNot;
    case Attribute::Identifiability: return kIdentifiability;
    case Attribute::Purpose: return kPurpose;
    case Attribute::PersonalInformationType: return kPersonalInformationType;
    case Attribute::AudienceType: return kAudienceType;
    case Attribute::ActionFirstParty: return kActionFirstParty;
    case Attribute::ActionThirdParty: return kActionThirdParty;
  }
  throw SchemaError("unknown attribute enum value");
}

bool is_known_practice(std::string_view name) {
  const auto& vocab = practice_vocabulary();
  return std::find(vocab.begin(), vocab.end(), name) != vocab.end();
}

bool is_known_attribute_value(Attribute attribute, std::string_view name) {
  const auto& vocab = attribute_vocabulary(attribute);
  return std::find(vocab.begin(), vocab.end(), name) != vocab.end();
}

}  // namespace labelaudit
