#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "labelaudit/compare/compare.hpp"
#include "labelaudit/derive/derive.hpp"
#include "labelaudit/ingest/app_records.hpp"

namespace labelaudit::compare {

enum class Facet { PriceModel, ContentRating };

std::string to_string(Facet facet);

// Throws UnknownFacet outside the closed enum.
Facet parse_facet(const std::string& name);

// One audited app joined with its metadata; the children flag records
// whether any policy segment addressed International/Specific Audiences
// with a Children audience.
struct AppAuditRow {
  std::string app_id;
  ingest::DeclaredLabel declared;
  derive::DerivedLabel derived;
  std::optional<ingest::AppMetadata> metadata;
  bool children_segment = false;
};

struct FacetCell {
  size_t label_count = 0;
  size_t policy_count = 0;
  double label_ratio = 0.0;
  double policy_ratio = 0.0;
  // Declared counts are exact; derived counts inherit the privacy type's
  // classifier uncertainty over the bucket denominator.
  long long policy_abs_uncertainty = 0;
};

struct FacetBucket {
  std::string bucket;
  size_t size = 0;
  std::map<PrivacyType, FacetCell> cells;
};

struct FacetReport {
  Facet facet = Facet::PriceModel;
  std::vector<FacetBucket> buckets;
  size_t missing_metadata = 0;
};

// Per-privacy-type absolute uncertainty fractions (from the conversion
// rules and F1 registry).
using TypeUncertainty = std::map<PrivacyType, double>;

TypeUncertainty type_uncertainties(const derive::ConversionRuleSet& rules,
                                   const derive::F1Registry& registry);

// Apps without metadata are excluded from bucket denominators and counted
// in missing_metadata.
FacetReport facet_breakdown(const std::vector<AppAuditRow>& rows, Facet facet,
                            const TypeUncertainty& uncertainty);

struct ChildrenTypeCell {
  size_t declared = 0;          // apps in bucket declaring this type
  size_t children_overlay = 0;  // of those, apps with a children segment
  long long abs_uncertainty = 0;  // type uncertainty over the declared count
};

struct ChildrenBucket {
  std::string rating;
  size_t size = 0;
  size_t children_overlay = 0;
  long long overlay_abs_uncertainty = 0;  // children-classifier uncertainty
  std::map<PrivacyType, ChildrenTypeCell> by_declared_type;
};

struct ChildrenAuditReport {
  std::vector<ChildrenBucket> buckets;
  size_t missing_metadata = 0;
};

ChildrenAuditReport children_audit(const std::vector<AppAuditRow>& rows,
                                   const TypeUncertainty& uncertainty,
                                   double children_uncertainty);

}  // namespace labelaudit::compare
