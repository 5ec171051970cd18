#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "labelaudit/taxonomy.hpp"

namespace labelaudit::ingest {

// One declared label entry. Track entries carry a category but no purpose;
// purposes appear only under the linked/not-linked types; DataNotCollected
// carries neither.
struct LabelKey {
  PrivacyType privacy_type;
  std::optional<LabelPurpose> purpose;
  std::optional<DataCategory> category;

  auto operator<=>(const LabelKey&) const = default;
};

struct DeclaredLabel {
  std::string app_id;
  std::set<LabelKey> entries;

  std::set<PrivacyType> privacy_types() const;
  bool has(PrivacyType t) const;
};

struct AppMetadata {
  std::string app_id;
  PriceModel price_model;
  ContentRating content_rating;
  std::string policy_url;
  std::string seller;
};

// Parses one declared-label JSON object. Throws SchemaError on unknown enum
// values or hierarchy violations, ExclusivityViolation when DataNotCollected
// co-occurs with another privacy type.
DeclaredLabel parse_declared_label(const std::string& record_json);

// Inverse of parse_declared_label on canonical labels.
std::string serialize_declared_label(const DeclaredLabel& label);

// Parses one metadata JSON object (a JSON Lines record). Price 0 maps to
// Free/FreeWithIAP, positive to Paid/PaidWithIAP by the in-app-purchase
// flag; content rating strings are "4+", "9+", "12+", "17+".
AppMetadata parse_app_metadata(const std::string& record_json);

// Whole-file loaders for the corpus layout: a JSON array of label objects,
// and JSON Lines metadata.
std::vector<DeclaredLabel> load_declared_labels(const std::string& path);
std::vector<AppMetadata> load_app_metadata(const std::string& path);

// Stem of the last path component of a policy URL, which names the local
// snapshot file <policy_id>.html.
std::string policy_id_from_url(const std::string& url);

}  // namespace labelaudit::ingest
