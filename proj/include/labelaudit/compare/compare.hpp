#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "labelaudit/derive/derive.hpp"
#include "labelaudit/ingest/app_records.hpp"

namespace labelaudit::compare {

// Set comparison of one label dimension: entries only declared on the App
// Store, only derived from the policy, or present in both.
template <typename T>
struct DimensionDiff {
  std::set<T> label_only;
  std::set<T> policy_only;
  std::set<T> overlap;

  std::set<T> declared() const {
    std::set<T> out = overlap;
    out.insert(label_only.begin(), label_only.end());
    return out;
  }
  std::set<T> derived() const {
    std::set<T> out = overlap;
    out.insert(policy_only.begin(), policy_only.end());
    return out;
  }
};

struct AppDiscrepancy {
  std::string app_id;
  DimensionDiff<PrivacyType> types;
  DimensionDiff<std::pair<PrivacyType, LabelPurpose>> purposes;
  DimensionDiff<std::pair<PrivacyType, DataCategory>> categories;
  bool dnc_contradiction = false;
};

// Throws AppIdMismatch when the two labels name different apps.
AppDiscrepancy compare(const ingest::DeclaredLabel& declared,
                       const derive::DerivedLabel& derived);

// cell(row = derived type, column = declared type) counts apps carrying
// both; missing_declaration counts the subset whose declared label lacks
// the row's derived type (the parenthesized values of the overlap table).
struct OverlapMatrix {
  std::array<std::array<size_t, 4>, 4> counts{};
  std::array<std::array<size_t, 4>, 4> missing_declaration{};
  size_t corpus_size = 0;

  size_t cell(PrivacyType derived, PrivacyType declared) const {
    return counts[static_cast<size_t>(derived)][static_cast<size_t>(declared)];
  }
};

OverlapMatrix overlap_matrix(const std::vector<AppDiscrepancy>& discrepancies);

// round-half-up(u * denominator): the absolute count uncertainty attached
// to derived results.
long long absolute_uncertainty(double uncertainty, long long denominator);

}  // namespace labelaudit::compare
