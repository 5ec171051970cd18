#include "labelaudit/ingest/app_records.hpp"

#include <fstream>
#include <map>

#include <json.hpp>

#include "labelaudit/errors.hpp"

namespace labelaudit::ingest {

using nlohmann::json;

std::set<PrivacyType> DeclaredLabel::privacy_types() const {
  std::set<PrivacyType> out;
  for (const auto& e : entries) out.insert(e.privacy_type);
  return out;
}

bool DeclaredLabel::has(PrivacyType t) const {
  for (const auto& e : entries) {
    if (e.privacy_type == t) return true;
  }
  return false;
}

namespace {

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError(std::string("malformed JSON ") + what);
  return j;
}

std::string require_string(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw SchemaError(std::string("missing or non-string field '") + field + "'");
  }
  return j[field].get<std::string>();
}

}  // namespace

DeclaredLabel parse_declared_label(const std::string& record_json) {
  json j = parse_json(record_json, "label record");
  DeclaredLabel label;
  label.app_id = require_string(j, "app_id");

  if (!j.contains("privacy_types") || !j["privacy_types"].is_array()) {
    throw SchemaError("label record lacks 'privacy_types' array");
  }
  for (const json& entry : j["privacy_types"]) {
    PrivacyType type = parse_privacy_type(require_string(entry, "type"));
    bool has_purposes = entry.contains("purposes");
    bool has_categories = entry.contains("categories");

    if (type == PrivacyType::DataNotCollected) {
      if (has_purposes || has_categories) {
        throw SchemaError("DataNotCollected carries no purposes or categories");
      }
      label.entries.insert({type, std::nullopt, std::nullopt});
      continue;
    }
    if (type == PrivacyType::DataUsedToTrackYou) {
      if (has_purposes) {
        throw SchemaError("DataUsedToTrackYou carries categories, not purposes");
      }
      if (!has_categories || entry["categories"].empty()) {
        label.entries.insert({type, std::nullopt, std::nullopt});
      } else {
        for (const json& c : entry["categories"]) {
          label.entries.insert(
              {type, std::nullopt, parse_data_category(c.get<std::string>())});
        }
      }
      continue;
    }
    // DataLinkedToYou / DataNotLinkedToYou.
    if (has_categories) {
      throw SchemaError("categories belong under purposes for " + to_string(type));
    }
    if (!has_purposes || entry["purposes"].empty()) {
      label.entries.insert({type, std::nullopt, std::nullopt});
      continue;
    }
    for (const json& p : entry["purposes"]) {
      LabelPurpose purpose = parse_label_purpose(require_string(p, "purpose"));
      if (!p.contains("categories") || p["categories"].empty()) {
        label.entries.insert({type, purpose, std::nullopt});
        continue;
      }
      for (const json& c : p["categories"]) {
        label.entries.insert(
            {type, purpose, parse_data_category(c.get<std::string>())});
      }
    }
  }

  if (label.has(PrivacyType::DataNotCollected) && label.entries.size() > 1) {
    throw ExclusivityViolation("DataNotCollected co-occurs with another privacy type (app " +
                               label.app_id + ")");
  }
  return label;
}

std::string serialize_declared_label(const DeclaredLabel& label) {
  json types = json::array();
  for (PrivacyType t : kAllPrivacyTypes) {
    if (!label.has(t)) continue;
    json entry;
    entry["type"] = to_string(t);
    if (t == PrivacyType::DataUsedToTrackYou) {
      json categories = json::array();
      for (const auto& e : label.entries) {
        if (e.privacy_type == t && e.category) {
          categories.push_back(to_string(*e.category));
        }
      }
      if (!categories.empty()) entry["categories"] = categories;
    } else if (t != PrivacyType::DataNotCollected) {
      std::map<LabelPurpose, json> by_purpose;
      for (const auto& e : label.entries) {
        if (e.privacy_type != t || !e.purpose) continue;
        json& purpose_entry = by_purpose
            .try_emplace(*e.purpose,
                         json{{"purpose", to_string(*e.purpose)},
                              {"categories", json::array()}})
            .first->second;
        if (e.category) {
          purpose_entry["categories"].push_back(to_string(*e.category));
        }
      }
      if (!by_purpose.empty()) {
        json purposes = json::array();
        for (auto& [_, purpose_entry] : by_purpose) purposes.push_back(purpose_entry);
        entry["purposes"] = purposes;
      }
    }
    types.push_back(entry);
  }
  json j;
  j["app_id"] = label.app_id;
  j["privacy_types"] = types;
  return j.dump();
}

AppMetadata parse_app_metadata(const std::string& record_json) {
  json j = parse_json(record_json, "metadata record");
  AppMetadata meta;
  meta.app_id = require_string(j, "app_id");
  if (!j.contains("price") || !j["price"].is_number()) {
    throw SchemaError("metadata record lacks numeric 'price'");
  }
  if (!j.contains("has_iap") || !j["has_iap"].is_boolean()) {
    throw SchemaError("metadata record lacks boolean 'has_iap'");
  }
  double price = j["price"].get<double>();
  bool iap = j["has_iap"].get<bool>();
  if (price < 0) throw SchemaError("negative price");
  if (price == 0) {
    meta.price_model = iap ? PriceModel::FreeWithIAP : PriceModel::Free;
  } else {
    meta.price_model = iap ? PriceModel::PaidWithIAP : PriceModel::Paid;
  }
  meta.content_rating = parse_content_rating(require_string(j, "content_rating"));
  meta.policy_url = require_string(j, "policy_url");
  meta.seller = j.value("seller", "");
  return meta;
}

std::vector<DeclaredLabel> load_declared_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open label file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_array()) {
    throw SchemaError("label file must hold a JSON array: " + path);
  }
  std::vector<DeclaredLabel> labels;
  labels.reserve(j.size());
  for (const json& record : j) labels.push_back(parse_declared_label(record.dump()));
  return labels;
}

std::vector<AppMetadata> load_app_metadata(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open metadata file: " + path);
  std::vector<AppMetadata> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_app_metadata(line));
  }
  return out;
}

std::string policy_id_from_url(const std::string& url) {
  std::string path = url;
  size_t scheme = path.find("://");
  if (scheme != std::string::npos) path = path.substr(scheme + 3);
  size_t cut = path.find_first_of("?#");
  if (cut != std::string::npos) path = path.substr(0, cut);
  while (!path.empty() && path.back() == '/') path.pop_back();
  size_t slash = path.find_last_of('/');
  if (slash != std::string::npos) path = path.substr(slash + 1);
  size_t dot = path.find_last_of('.');
  if (dot != std::string::npos && dot > 0) path = path.substr(0, dot);
  return path;
}

}  // namespace labelaudit::ingest
