#include "labelaudit/compare/facets.hpp"

#include "labelaudit/errors.hpp"

namespace labelaudit::compare {

std::string to_string(Facet facet) {
  switch (facet) {
    case Facet::PriceModel: return "PriceModel";
    case Facet::ContentRating: return "ContentRating";
  }
  return "?";
}

Facet parse_facet(const std::string& name) {
  if (name == "PriceModel") return Facet::PriceModel;
  if (name == "ContentRating") return Facet::ContentRating;
  throw UnknownFacet("unknown facet: '" + name + "'");
}

TypeUncertainty type_uncertainties(const derive::ConversionRuleSet& rules,
                                   const derive::F1Registry& registry) {
  TypeUncertainty out;
  for (PrivacyType type : kAllPrivacyTypes) {
    const derive::ConversionRule* rule =
        rules.find(derive::TargetKind::PrivacyType, to_string(type));
    if (rule == nullptr) {
      throw RuleConfigError("no conversion rule for privacy type " + to_string(type));
    }
    out[type] = derive::entry_uncertainty(*rule, registry);
  }
  return out;
}

namespace {

std::vector<std::string> facet_bucket_names(Facet facet) {
  std::vector<std::string> names;
  if (facet == Facet::PriceModel) {
    for (PriceModel p : kAllPriceModels) names.push_back(to_string(p));
  } else {
    for (ContentRating r : kAllContentRatings) names.push_back(to_string(r));
  }
  return names;
}

std::string bucket_of(const ingest::AppMetadata& meta, Facet facet) {
  return facet == Facet::PriceModel ? to_string(meta.price_model)
                                    : to_string(meta.content_rating);
}

}  // namespace

FacetReport facet_breakdown(const std::vector<AppAuditRow>& rows, Facet facet,
                            const TypeUncertainty& uncertainty) {
  FacetReport report;
  report.facet = facet;

  std::map<std::string, FacetBucket> buckets;
  for (const std::string& name : facet_bucket_names(facet)) {
    buckets[name].bucket = name;
    for (PrivacyType type : kAllPrivacyTypes) buckets[name].cells[type];
  }

  for (const auto& row : rows) {
    if (!row.metadata) {
      ++report.missing_metadata;
      continue;
    }
    FacetBucket& bucket = buckets.at(bucket_of(*row.metadata, facet));
    ++bucket.size;
    for (PrivacyType type : kAllPrivacyTypes) {
      FacetCell& cell = bucket.cells[type];
      if (row.declared.has(type)) ++cell.label_count;
      if (row.derived.has(type)) ++cell.policy_count;
    }
  }

  for (const std::string& name : facet_bucket_names(facet)) {
    FacetBucket& bucket = buckets.at(name);
    for (auto& [type, cell] : bucket.cells) {
      if (bucket.size > 0) {
        cell.label_ratio =
            static_cast<double>(cell.label_count) / static_cast<double>(bucket.size);
        cell.policy_ratio =
            static_cast<double>(cell.policy_count) / static_cast<double>(bucket.size);
      }
      cell.policy_abs_uncertainty = absolute_uncertainty(
          uncertainty.at(type), static_cast<long long>(bucket.size));
    }
    report.buckets.push_back(std::move(bucket));
  }
  return report;
}

ChildrenAuditReport children_audit(const std::vector<AppAuditRow>& rows,
                                   const TypeUncertainty& uncertainty,
                                   double children_uncertainty) {
  ChildrenAuditReport report;
  std::map<std::string, ChildrenBucket> buckets;
  for (ContentRating rating : kAllContentRatings) {
    auto name = to_string(rating);
    buckets[name].rating = name;
    for (PrivacyType type : kAllPrivacyTypes) buckets[name].by_declared_type[type];
  }

  for (const auto& row : rows) {
    if (!row.metadata) {
      ++report.missing_metadata;
      continue;
    }
    ChildrenBucket& bucket = buckets.at(to_string(row.metadata->content_rating));
    ++bucket.size;
    if (row.children_segment) ++bucket.children_overlay;
    for (PrivacyType type : kAllPrivacyTypes) {
      if (!row.declared.has(type)) continue;
      ChildrenTypeCell& cell = bucket.by_declared_type[type];
      ++cell.declared;
      if (row.children_segment) ++cell.children_overlay;
    }
  }

  for (ContentRating rating : kAllContentRatings) {
    ChildrenBucket& bucket = buckets.at(to_string(rating));
    bucket.overlay_abs_uncertainty = absolute_uncertainty(
        children_uncertainty, static_cast<long long>(bucket.size));
    for (auto& [type, cell] : bucket.by_declared_type) {
      cell.abs_uncertainty = absolute_uncertainty(
          uncertainty.at(type), static_cast<long long>(cell.declared));
    }
    report.buckets.push_back(std::move(bucket));
  }
  return report;
}

}  // namespace labelaudit::compare
