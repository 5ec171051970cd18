#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace labelaudit {

// Top tier of an App Store privacy label. DataNotCollected is mutually
// exclusive with the other three.
enum class PrivacyType {
  DataUsedToTrackYou,
  DataLinkedToYou,
  DataNotLinkedToYou,
  DataNotCollected,
};

// The six label purposes. Purposes appear only under DataLinkedToYou and
// DataNotLinkedToYou.
enum class LabelPurpose {
  AppFunctionality,
  Analytics,
  DevelopersAdvertising,
  ThirdPartyAdvertising,
  ProductPersonalization,
  OtherPurposes,
};

// The 13 label data categories (8 from direct conversion, 5 inferred).
enum class DataCategory {
  ContactInfo,
  Location,
  FinancialInfo,
  Identifiers,
  UsageData,
  UserContent,
  HealthAndFitness,
  BrowsingHistory,
  Diagnostics,
  Contacts,
  Purchases,
  SearchHistory,
  SensitiveInfo,
};

// One classifier per attribute; SegmentPractices is the top-level segment
// classifier over high-level data practices.
enum class Attribute {
  SegmentPractices,
  DoesDoesNot,
  Identifiability,
  Purpose,
  PersonalInformationType,
  AudienceType,
  ActionFirstParty,
  ActionThirdParty,
};

enum class PriceModel { Free, FreeWithIAP, Paid, PaidWithIAP };

enum class ContentRating { R4Plus, R9Plus, R12Plus, R17Plus };

inline constexpr std::array<PrivacyType, 4> kAllPrivacyTypes = {
    PrivacyType::DataUsedToTrackYou,
    PrivacyType::DataLinkedToYou,
    PrivacyType::DataNotLinkedToYou,
    PrivacyType::DataNotCollected,
};

inline constexpr std::array<LabelPurpose, 6> kAllLabelPurposes = {
    LabelPurpose::AppFunctionality,
    LabelPurpose::Analytics,
    LabelPurpose::DevelopersAdvertising,
    LabelPurpose::ThirdPartyAdvertising,
    LabelPurpose::ProductPersonalization,
    LabelPurpose::OtherPurposes,
};

inline constexpr std::array<DataCategory, 13> kAllDataCategories = {
    DataCategory::ContactInfo,     DataCategory::Location,
    DataCategory::FinancialInfo,   DataCategory::Identifiers,
    DataCategory::UsageData,       DataCategory::UserContent,
    DataCategory::HealthAndFitness, DataCategory::BrowsingHistory,
    DataCategory::Diagnostics,     DataCategory::Contacts,
    DataCategory::Purchases,       DataCategory::SearchHistory,
    DataCategory::SensitiveInfo,
};

inline constexpr std::array<Attribute, 8> kAllAttributes = {
    Attribute::SegmentPractices, Attribute::DoesDoesNot,
    Attribute::Identifiability,  Attribute::Purpose,
    Attribute::PersonalInformationType, Attribute::AudienceType,
    Attribute::ActionFirstParty, Attribute::ActionThirdParty,
};

inline constexpr std::array<PriceModel, 4> kAllPriceModels = {
    PriceModel::Free, PriceModel::FreeWithIAP, PriceModel::Paid,
    PriceModel::PaidWithIAP};

inline constexpr std::array<ContentRating, 4> kAllContentRatings = {
    ContentRating::R4Plus, ContentRating::R9Plus, ContentRating::R12Plus,
    ContentRating::R17Plus};

std::string to_string(PrivacyType t);
std::string to_string(LabelPurpose p);
std::string to_string(DataCategory c);
std::string to_string(Attribute a);
std::string to_string(PriceModel p);
std::string to_string(ContentRating r);

// All parse_* throw SchemaError on values outside the closed enum.
PrivacyType parse_privacy_type(std::string_view s);
LabelPurpose parse_label_purpose(std::string_view s);
DataCategory parse_data_category(std::string_view s);
Attribute parse_attribute(std::string_view s);
PriceModel parse_price_model(std::string_view s);
ContentRating parse_content_rating(std::string_view s);

// High-level data practice names (segment-classifier vocabulary).
namespace practice {
inline constexpr const char* kFirstPartyCollectionUse = "FirstPartyCollectionUse";
inline constexpr const char* kThirdPartyCollectionSharing = "ThirdPartyCollectionSharing";
inline constexpr const char* kInternationalSpecificAudiences = "InternationalSpecificAudiences";
inline constexpr const char* kUserChoiceControl = "UserChoiceControl";
inline constexpr const char* kUserAccessEditDeletion = "UserAccessEditDeletion";
inline constexpr const char* kDataRetention = "DataRetention";
inline constexpr const char* kDataSecurity = "DataSecurity";
inline constexpr const char* kPolicyChange = "PolicyChange";
inline constexpr const char* kDoNotTrack = "DoNotTrack";
inline constexpr const char* kOther = "Other";
}  // namespace practice

// Attribute values the conversion and filtering logic depends on by name.
namespace value {
inline constexpr const char* kDoes = "Does";
inline constexpr const char* kDoesNot = "DoesNot";
inline constexpr const char* kIdentifiable = "Identifiable";
inline constexpr const char* kAggregatedOrAnonymized = "AggregatedOrAnonymized";
inline constexpr const char* kBasicServiceFeature = "BasicServiceFeature";
inline constexpr const char* kAdditionalServiceFeature = "AdditionalServiceFeature";
inline constexpr const char* kServiceOperationAndSecurity = "ServiceOperationAndSecurity";
inline constexpr const char* kAnalyticsResearch = "AnalyticsResearch";
inline constexpr const char* kAdvertising = "Advertising";
inline constexpr const char* kPersonalizationCustomization = "PersonalizationCustomization";
inline constexpr const char* kMergerAcquisition = "MergerAcquisition";
inline constexpr const char* kLegalRequirement = "LegalRequirement";
inline constexpr const char* kMarketing = "Marketing";
inline constexpr const char* kUnspecified = "Unspecified";
inline constexpr const char* kContact = "Contact";
inline constexpr const char* kLocation = "Location";
inline constexpr const char* kFinancial = "Financial";
inline constexpr const char* kCookiesAndTrackingElements = "CookiesAndTrackingElements";
inline constexpr const char* kIPAddressAndDeviceIDs = "IPAddressAndDeviceIDs";
inline constexpr const char* kUserOnlineActivities = "UserOnlineActivities";
inline constexpr const char* kUserProfile = "UserProfile";
inline constexpr const char* kSocialMediaData = "SocialMediaData";
inline constexpr const char* kHealth = "Health";
inline constexpr const char* kComputerInformation = "ComputerInformation";
inline constexpr const char* kDemographic = "Demographic";
inline constexpr const char* kGenericPersonalInformation = "GenericPersonalInformation";
inline constexpr const char* kPersonalIdentifier = "PersonalIdentifier";
inline constexpr const char* kSurveyData = "SurveyData";
inline constexpr const char* kChildren = "Children";
inline constexpr const char* kCaliforniansEuropeans = "CitizensOfSpecificRegions";
inline constexpr const char* kCollectOnWebsite = "CollectOnWebsite";
inline constexpr const char* kCollectInMobileApp = "CollectInMobileApp";
inline constexpr const char* kCollectOnFirstPartyWebsiteApp = "CollectOnFirstPartyWebsiteApp";
inline constexpr const char* kReceiveShared = "ReceiveShared";
inline constexpr const char* kSee = "See";
inline constexpr const char* kTrackOnFirstPartyWebsiteApp = "TrackOnFirstPartyWebsiteApp";
}  // namespace value

// Closed vocabulary of high-level data practices.
const std::vector<std::string>& practice_vocabulary();

// Closed value vocabulary for one attribute classifier.
const std::vector<std::string>& attribute_vocabulary(Attribute attribute);

bool is_known_practice(std::string_view name);
bool is_known_attribute_value(Attribute attribute, std::string_view name);

}  // namespace labelaudit
