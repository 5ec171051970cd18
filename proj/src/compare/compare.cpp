#include "labelaudit/compare/compare.hpp"

#include <algorithm>
#include <cmath>

#include "labelaudit/errors.hpp"

namespace labelaudit::compare {

namespace {

template <typename T>
DimensionDiff<T> diff_sets(const std::set<T>& declared, const std::set<T>& derived) {
  DimensionDiff<T> out;
  std::set_difference(declared.begin(), declared.end(), derived.begin(),
                      derived.end(),
                      std::inserter(out.label_only, out.label_only.end()));
  std::set_difference(derived.begin(), derived.end(), declared.begin(),
                      declared.end(),
                      std::inserter(out.policy_only, out.policy_only.end()));
  std::set_intersection(declared.begin(), declared.end(), derived.begin(),
                        derived.end(),
                        std::inserter(out.overlap, out.overlap.end()));
  return out;
}

std::set<std::pair<PrivacyType, LabelPurpose>> declared_purposes(
    const ingest::DeclaredLabel& label) {
  std::set<std::pair<PrivacyType, LabelPurpose>> out;
  for (const auto& e : label.entries) {
    if (e.purpose) out.insert({e.privacy_type, *e.purpose});
  }
  return out;
}

std::set<std::pair<PrivacyType, DataCategory>> declared_categories(
    const ingest::DeclaredLabel& label) {
  std::set<std::pair<PrivacyType, DataCategory>> out;
  for (const auto& e : label.entries) {
    if (e.category) out.insert({e.privacy_type, *e.category});
  }
  return out;
}

bool derives_collection(const derive::DerivedLabel& derived) {
  for (const auto& [key, _] : derived.entries) {
    if (key.privacy_type != PrivacyType::DataNotCollected) return true;
  }
  return false;
}

}  // namespace

AppDiscrepancy compare(const ingest::DeclaredLabel& declared,
                       const derive::DerivedLabel& derived) {
  if (declared.app_id != derived.app_id) {
    throw AppIdMismatch("declared label for '" + declared.app_id +
                        "' compared against derived label for '" + derived.app_id + "'");
  }
  AppDiscrepancy out;
  out.app_id = declared.app_id;
  out.types = diff_sets(declared.privacy_types(), derived.privacy_types());
  out.purposes = diff_sets(declared_purposes(declared), derived.type_purpose_pairs());
  out.categories =
      diff_sets(declared_categories(declared), derived.type_category_pairs());
  out.dnc_contradiction = declared.has(PrivacyType::DataNotCollected) &&
                          derives_collection(derived);
  return out;
}

OverlapMatrix overlap_matrix(const std::vector<AppDiscrepancy>& discrepancies) {
  OverlapMatrix matrix;
  matrix.corpus_size = discrepancies.size();
  for (const auto& d : discrepancies) {
    const auto declared = d.types.declared();
    const auto derived = d.types.derived();
    for (PrivacyType row : derived) {
      bool row_declared = declared.count(row) > 0;
      for (PrivacyType col : declared) {
        auto r = static_cast<size_t>(row);
        auto c = static_cast<size_t>(col);
        ++matrix.counts[r][c];
        if (!row_declared) ++matrix.missing_declaration[r][c];
      }
    }
  }
  return matrix;
}

long long absolute_uncertainty(double uncertainty, long long denominator) {
  if (denominator <= 0 || uncertainty <= 0.0) return 0;
  double scaled = uncertainty * static_cast<double>(denominator);
  return static_cast<long long>(std::floor(scaled + 0.5 + 1e-9));
}

}  // namespace labelaudit::compare
