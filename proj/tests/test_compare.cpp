#include <doctest.h>

#include "labelaudit/compare/report.hpp"
#include "labelaudit/errors.hpp"
#include "testutil.hpp"

using namespace labelaudit;
using namespace labelaudit::compare;

namespace {

ingest::DeclaredLabel declared_with(const std::string& app_id,
                                    std::vector<ingest::LabelKey> entries) {
  ingest::DeclaredLabel label;
  label.app_id = app_id;
  for (auto& e : entries) label.entries.insert(e);
  return label;
}

derive::DerivedLabel derived_with(const std::string& app_id,
                                  std::vector<ingest::LabelKey> keys) {
  derive::DerivedLabel label;
  label.app_id = app_id;
  for (auto& key : keys) {
    derive::LabelEntry entry;
    entry.key = key;
    entry.supporting_segments = {0};
    label.entries.emplace(key, entry);
  }
  return label;
}

constexpr auto kLinked = PrivacyType::DataLinkedToYou;
constexpr auto kNotLinked = PrivacyType::DataNotLinkedToYou;
constexpr auto kTrack = PrivacyType::DataUsedToTrackYou;
constexpr auto kDnc = PrivacyType::DataNotCollected;

}  // namespace

TEST_CASE("compare flags the DNC contradiction") {
  auto declared = declared_with("a", {{kDnc, std::nullopt, std::nullopt}});
  auto derived = derived_with("a", {{kLinked, LabelPurpose::Analytics,
                                     DataCategory::ContactInfo}});
  AppDiscrepancy d = compare(declared, derived);
  CHECK(d.dnc_contradiction);
  CHECK(d.types.label_only == std::set<PrivacyType>{kDnc});
  CHECK(d.types.policy_only == std::set<PrivacyType>{kLinked});

  SUBCASE("derived DNC does not contradict") {
    auto derived_dnc = derived_with("a", {{kDnc, std::nullopt, std::nullopt}});
    CHECK_FALSE(compare(declared, derived_dnc).dnc_contradiction);
  }
}

TEST_CASE("identical labels produce pure overlap") {
  ingest::LabelKey key{kLinked, LabelPurpose::Analytics, DataCategory::ContactInfo};
  auto declared = declared_with("a", {key});
  auto derived = derived_with("a", {key});
  AppDiscrepancy d = compare(declared, derived);
  CHECK(d.types.label_only.empty());
  CHECK(d.types.policy_only.empty());
  CHECK(d.types.overlap == std::set<PrivacyType>{kLinked});
  CHECK(d.purposes.overlap.size() == 1);
  CHECK(d.categories.overlap.size() == 1);
  CHECK_FALSE(d.dnc_contradiction);
}

TEST_CASE("policy-only types appear in the difference") {
  auto declared = declared_with("a", {{kLinked, std::nullopt, std::nullopt}});
  auto derived = derived_with("a", {{kLinked, std::nullopt, std::nullopt},
                                    {kTrack, std::nullopt, std::nullopt}});
  AppDiscrepancy d = compare(declared, derived);
  CHECK(d.types.policy_only == std::set<PrivacyType>{kTrack});
  CHECK(d.types.overlap == std::set<PrivacyType>{kLinked});
}

TEST_CASE("compare rejects mismatched app ids") {
  auto declared = declared_with("a", {{kLinked, std::nullopt, std::nullopt}});
  auto derived = derived_with("b", {{kLinked, std::nullopt, std::nullopt}});
  CHECK_THROWS_AS(compare(declared, derived), AppIdMismatch);
}

TEST_CASE("per-dimension partition invariant holds") {
  auto declared = declared_with(
      "a", {{kLinked, LabelPurpose::Analytics, DataCategory::ContactInfo},
            {kNotLinked, LabelPurpose::AppFunctionality, std::nullopt},
            {kTrack, std::nullopt, DataCategory::Identifiers}});
  auto derived = derived_with(
      "a", {{kLinked, LabelPurpose::DevelopersAdvertising, DataCategory::Location},
            {kTrack, std::nullopt, DataCategory::Identifiers}});
  AppDiscrepancy d = compare(declared, derived);
  auto check_partition = [](const auto& dim, const auto& declared_set,
                            const auto& derived_set) {
    CHECK(dim.declared() == declared_set);
    CHECK(dim.derived() == derived_set);
    for (const auto& v : dim.overlap) {
      CHECK(dim.label_only.count(v) == 0);
      CHECK(dim.policy_only.count(v) == 0);
    }
  };
  check_partition(d.types, declared.privacy_types(), derived.privacy_types());
}

// ---------------------------------------------------------- overlap matrix

TEST_CASE("overlap matrix counts match a hand-built 3-app corpus") {
  // app1: declared {Linked}, derived {Linked, Track}
  // app2: declared {Linked, NotLinked}, derived {Linked}
  // app3: declared {DNC}, derived {Linked}
  std::vector<AppDiscrepancy> ds;
  ds.push_back(compare(declared_with("app1", {{kLinked, std::nullopt, std::nullopt}}),
                       derived_with("app1", {{kLinked, std::nullopt, std::nullopt},
                                             {kTrack, std::nullopt, std::nullopt}})));
  ds.push_back(compare(declared_with("app2", {{kLinked, std::nullopt, std::nullopt},
                                              {kNotLinked, std::nullopt, std::nullopt}}),
                       derived_with("app2", {{kLinked, std::nullopt, std::nullopt}})));
  ds.push_back(compare(declared_with("app3", {{kDnc, std::nullopt, std::nullopt}}),
                       derived_with("app3", {{kLinked, std::nullopt, std::nullopt}})));
  OverlapMatrix m = overlap_matrix(ds);
  CHECK(m.corpus_size == 3);
  CHECK(m.cell(kLinked, kLinked) == 2);       // app1, app2
  CHECK(m.cell(kTrack, kLinked) == 1);        // app1
  CHECK(m.cell(kLinked, kNotLinked) == 1);    // app2
  CHECK(m.cell(kLinked, kDnc) == 1);          // app3
  CHECK(m.cell(kDnc, kDnc) == 0);
  // app1 derived Track without declaring it.
  CHECK(m.missing_declaration[static_cast<size_t>(kTrack)]
                             [static_cast<size_t>(kLinked)] == 1);
  // Diagonal cells never count missing declarations.
  CHECK(m.missing_declaration[static_cast<size_t>(kLinked)]
                             [static_cast<size_t>(kLinked)] == 0);

  SUBCASE("empty corpus gives an all-zero matrix") {
    OverlapMatrix zero = overlap_matrix({});
    for (PrivacyType r : kAllPrivacyTypes) {
      for (PrivacyType c : kAllPrivacyTypes) CHECK(zero.cell(r, c) == 0);
    }
  }
}

TEST_CASE("an app declaring two types increments both columns") {
  std::vector<AppDiscrepancy> ds;
  ds.push_back(compare(declared_with("a", {{kLinked, std::nullopt, std::nullopt},
                                           {kNotLinked, std::nullopt, std::nullopt}}),
                       derived_with("a", {{kLinked, std::nullopt, std::nullopt}})));
  OverlapMatrix m = overlap_matrix(ds);
  CHECK(m.cell(kLinked, kLinked) == 1);
  CHECK(m.cell(kLinked, kNotLinked) == 1);
}

// ----------------------------------------------------- absolute uncertainty

TEST_CASE("absolute_uncertainty reproduces published counts") {
  CHECK(absolute_uncertainty(0.38, 220191) == 83673);
  CHECK(absolute_uncertainty(0.30, 205274) == 61582);
  CHECK(absolute_uncertainty(0.01, 16687) == 167);
  CHECK(absolute_uncertainty(0.38, 108642) == 41284);
}

TEST_CASE("absolute_uncertainty edge cases and monotonicity") {
  CHECK(absolute_uncertainty(0.0, 1000) == 0);
  CHECK(absolute_uncertainty(0.5, 0) == 0);
  long long previous = 0;
  for (long long n = 0; n <= 10000; n += 500) {
    long long current = absolute_uncertainty(0.37, n);
    CHECK(current >= previous);
    previous = current;
  }
  CHECK(absolute_uncertainty(0.2, 1000) <= absolute_uncertainty(0.3, 1000));
}

// ------------------------------------------------------------------ facets

namespace {

ingest::AppMetadata meta_of(const std::string& app_id, PriceModel price,
                            ContentRating rating) {
  ingest::AppMetadata m;
  m.app_id = app_id;
  m.price_model = price;
  m.content_rating = rating;
  m.policy_url = "https://x.com/" + app_id + ".html";
  return m;
}

AppAuditRow row_of(const std::string& app_id, PriceModel price,
                   ContentRating rating, bool declared_linked,
                   bool derived_linked, bool children = false) {
  AppAuditRow row;
  row.app_id = app_id;
  if (declared_linked) {
    row.declared = declared_with(app_id, {{kLinked, std::nullopt, std::nullopt}});
  } else {
    row.declared.app_id = app_id;
  }
  if (derived_linked) {
    row.derived = derived_with(app_id, {{kLinked, std::nullopt, std::nullopt}});
  } else {
    row.derived.app_id = app_id;
  }
  row.metadata = meta_of(app_id, price, rating);
  row.children_segment = children;
  return row;
}

TypeUncertainty default_uncertainty() {
  return type_uncertainties(derive::ConversionRuleSet::defaults(),
                            derive::F1Registry::defaults());
}

}  // namespace

TEST_CASE("type uncertainties derive from the default tables") {
  TypeUncertainty u = default_uncertainty();
  CHECK(u.at(kLinked) == doctest::Approx(0.38));
  CHECK(u.at(kNotLinked) == doctest::Approx(0.29));
  CHECK(u.at(kTrack) == doctest::Approx(0.26));
  CHECK(u.at(kDnc) == doctest::Approx(0.30));
}

TEST_CASE("facet breakdown counts declared and derived per bucket") {
  std::vector<AppAuditRow> rows;
  rows.push_back(row_of("a", PriceModel::Paid, ContentRating::R4Plus, true, true));
  rows.push_back(row_of("b", PriceModel::Paid, ContentRating::R4Plus, false, true));
  rows.push_back(row_of("c", PriceModel::Free, ContentRating::R9Plus, true, false));

  FacetReport report = facet_breakdown(rows, Facet::PriceModel, default_uncertainty());
  const FacetBucket* paid = nullptr;
  for (const auto& bucket : report.buckets) {
    if (bucket.bucket == "Paid") paid = &bucket;
  }
  REQUIRE(paid != nullptr);
  CHECK(paid->size == 2);
  CHECK(paid->cells.at(kLinked).policy_count == 2);
  CHECK(paid->cells.at(kLinked).label_count == 1);
  CHECK(paid->cells.at(kLinked).policy_ratio == doctest::Approx(1.0));
  CHECK(paid->cells.at(kLinked).label_ratio == doctest::Approx(0.5));

  SUBCASE("bucket sizes sum to the apps with metadata") {
    size_t total = 0;
    for (const auto& bucket : report.buckets) total += bucket.size;
    CHECK(total == rows.size());
    CHECK(report.missing_metadata == 0);
  }
}

TEST_CASE("facet uncertainty uses the bucket size as denominator") {
  std::vector<AppAuditRow> rows;
  for (int i = 0; i < 25; ++i) {
    rows.push_back(row_of("app" + std::to_string(i), PriceModel::Paid,
                          ContentRating::R4Plus, false, true));
  }
  FacetReport report = facet_breakdown(rows, Facet::PriceModel, default_uncertainty());
  for (const auto& bucket : report.buckets) {
    if (bucket.bucket != "Paid") continue;
    CHECK(bucket.cells.at(kLinked).policy_abs_uncertainty ==
          absolute_uncertainty(0.38, 25));
  }
}

TEST_CASE("apps without metadata are excluded and reported") {
  std::vector<AppAuditRow> rows;
  rows.push_back(row_of("a", PriceModel::Free, ContentRating::R4Plus, true, true));
  rows.back().metadata.reset();
  FacetReport report = facet_breakdown(rows, Facet::PriceModel, default_uncertainty());
  CHECK(report.missing_metadata == 1);
  for (const auto& bucket : report.buckets) CHECK(bucket.size == 0);
}

TEST_CASE("unknown facet names are rejected") {
  CHECK_THROWS_AS(parse_facet("Genre"), UnknownFacet);
  CHECK(parse_facet("ContentRating") == Facet::ContentRating);
}

// ---------------------------------------------------------- children audit

TEST_CASE("children audit counts the ISA+Children overlay per bucket") {
  std::vector<AppAuditRow> rows;
  rows.push_back(row_of("a", PriceModel::Free, ContentRating::R4Plus, true, true, true));
  rows.push_back(row_of("b", PriceModel::Free, ContentRating::R4Plus, true, true, false));
  rows.push_back(row_of("c", PriceModel::Free, ContentRating::R9Plus, false, true, true));

  ChildrenAuditReport report = children_audit(rows, default_uncertainty(), 0.01);
  const ChildrenBucket* four = nullptr;
  const ChildrenBucket* nine = nullptr;
  for (const auto& bucket : report.buckets) {
    if (bucket.rating == "4+") four = &bucket;
    if (bucket.rating == "9+") nine = &bucket;
  }
  REQUIRE(four != nullptr);
  REQUIRE(nine != nullptr);
  CHECK(four->size == 2);
  CHECK(four->children_overlay == 1);  // overlay ratio 0.5
  CHECK(four->by_declared_type.at(kLinked).declared == 2);
  CHECK(four->by_declared_type.at(kLinked).children_overlay == 1);
  CHECK(nine->children_overlay == 1);
  // Overlay <= bucket size everywhere.
  for (const auto& bucket : report.buckets) {
    CHECK(bucket.children_overlay <= bucket.size);
  }
}

TEST_CASE("children overlay uncertainty follows the bucket denominator") {
  std::vector<AppAuditRow> rows;
  for (int i = 0; i < 300; ++i) {
    rows.push_back(row_of("app" + std::to_string(i), PriceModel::Free,
                          ContentRating::R9Plus, true, true, i % 2 == 0));
  }
  ChildrenAuditReport report = children_audit(rows, default_uncertainty(), 0.01);
  for (const auto& bucket : report.buckets) {
    if (bucket.rating != "9+") continue;
    CHECK(bucket.overlay_abs_uncertainty == absolute_uncertainty(0.01, 300));
    // Per-type cells use the privacy type's uncertainty over declared counts.
    CHECK(bucket.by_declared_type.at(kLinked).abs_uncertainty ==
          absolute_uncertainty(0.38, 300));
  }
}

// ----------------------------------------------------------------- reports

TEST_CASE("overlap matrix CSV is a 5x5 grid") {
  testutil::TempDir dir("report_csv");
  std::vector<AppDiscrepancy> ds;
  ds.push_back(compare(declared_with("a", {{kLinked, std::nullopt, std::nullopt}}),
                       derived_with("a", {{kLinked, std::nullopt, std::nullopt}})));
  OverlapMatrix matrix = overlap_matrix(ds);
  emit_report(matrix, ReportFormat::Csv, dir.file("m.csv"));
  std::string text = testutil::read_file(dir.file("m.csv"));
  size_t lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == 5);  // header + 4 rows
  size_t first_line_commas = std::count(text.begin(),
                                        text.begin() + static_cast<long>(text.find('\n')), ',');
  CHECK(first_line_commas == 4);  // 5 columns
}

TEST_CASE("emitting the same report twice is byte-identical") {
  testutil::TempDir dir("report_repeat");
  std::vector<AppDiscrepancy> ds;
  ds.push_back(compare(declared_with("a", {{kTrack, std::nullopt, std::nullopt}}),
                       derived_with("a", {{kLinked, std::nullopt, std::nullopt}})));
  emit_report(ds, ReportFormat::Json, dir.file("d1.json"));
  emit_report(ds, ReportFormat::Json, dir.file("d2.json"));
  CHECK(testutil::read_file(dir.file("d1.json")) ==
        testutil::read_file(dir.file("d2.json")));
  OverlapMatrix matrix = overlap_matrix(ds);
  emit_report(matrix, ReportFormat::Csv, dir.file("m1.csv"));
  emit_report(matrix, ReportFormat::Csv, dir.file("m2.csv"));
  CHECK(testutil::read_file(dir.file("m1.csv")) ==
        testutil::read_file(dir.file("m2.csv")));
}

TEST_CASE("unwritable paths raise IOFailure") {
  std::vector<AppDiscrepancy> ds;
  CHECK_THROWS_AS(emit_report(ds, ReportFormat::Json, "/nonexistent_dir/x.json"),
                  IOFailure);
}

TEST_CASE("template breakdown joins matches with app discrepancies") {
  templates::TemplateScanReport scan;
  scan.policies_scanned = 2;
  scan.policies_by_template["termly"] = {"pol1"};
  scan.policies_by_template["unused"] = {};

  std::vector<AppAuditRow> rows;
  rows.push_back(row_of("a", PriceModel::Free, ContentRating::R4Plus, true, true));
  rows.push_back(row_of("b", PriceModel::Free, ContentRating::R4Plus, false, true));
  std::map<std::string, std::string> policy_by_app = {{"a", "pol1"}, {"b", "pol2"}};

  TemplateBreakdownReport report = template_breakdown(scan, rows, policy_by_app);
  REQUIRE(report.templates.size() == 2);
  const TemplateSummary* termly = nullptr;
  for (const auto& s : report.templates) {
    if (s.template_name == "termly") termly = &s;
  }
  REQUIRE(termly != nullptr);
  CHECK(termly->policies == 1);
  CHECK(termly->apps == 1);  // only app "a" links to pol1
  CHECK(termly->by_type.at(kLinked).overlap == 1);
}
