#include "labelaudit/compare/report.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "labelaudit/errors.hpp"

namespace labelaudit::compare {

using nlohmann::json;

TemplateBreakdownReport template_breakdown(
    const templates::TemplateScanReport& scan,
    const std::vector<AppAuditRow>& rows,
    const std::map<std::string, std::string>& policy_by_app) {
  // Reverse index: matched policy -> apps linking to it.
  std::map<std::string, std::vector<const AppAuditRow*>> apps_by_policy;
  for (const auto& row : rows) {
    auto it = policy_by_app.find(row.app_id);
    if (it != policy_by_app.end()) apps_by_policy[it->second].push_back(&row);
  }

  TemplateBreakdownReport report;
  for (const auto& [name, policies] : scan.policies_by_template) {
    TemplateSummary summary;
    summary.template_name = name;
    summary.policies = policies.size();
    for (PrivacyType type : kAllPrivacyTypes) summary.by_type[type];
    for (const std::string& policy_id : policies) {
      auto it = apps_by_policy.find(policy_id);
      if (it == apps_by_policy.end()) continue;
      for (const AppAuditRow* row : it->second) {
        ++summary.apps;
        auto declared = row->declared.privacy_types();
        auto derived = row->derived.privacy_types();
        for (PrivacyType type : kAllPrivacyTypes) {
          bool in_label = declared.count(type) > 0;
          bool in_policy = derived.count(type) > 0;
          if (in_label && in_policy) ++summary.by_type[type].overlap;
          else if (in_label) ++summary.by_type[type].label_only;
          else if (in_policy) ++summary.by_type[type].policy_only;
        }
      }
    }
    report.templates.push_back(std::move(summary));
  }
  return report;
}

namespace {

template <typename T>
json names_of(const std::set<T>& values) {
  json out = json::array();
  for (const T& v : values) out.push_back(to_string(v));
  return out;
}

template <typename A, typename B>
json names_of(const std::set<std::pair<A, B>>& values) {
  json out = json::array();
  for (const auto& [a, b] : values) {
    out.push_back(json::array({to_string(a), to_string(b)}));
  }
  return out;
}

template <typename T>
json dimension_json(const DimensionDiff<T>& diff) {
  return json{{"label_only", names_of(diff.label_only)},
              {"policy_only", names_of(diff.policy_only)},
              {"overlap", names_of(diff.overlap)}};
}

}  // namespace

json to_json(const AppDiscrepancy& d) {
  return json{{"app_id", d.app_id},
              {"privacy_types", dimension_json(d.types)},
              {"purposes", dimension_json(d.purposes)},
              {"categories", dimension_json(d.categories)},
              {"dnc_contradiction", d.dnc_contradiction}};
}

json to_json(const std::vector<AppDiscrepancy>& discrepancies) {
  json apps = json::array();
  for (const auto& d : discrepancies) apps.push_back(to_json(d));
  return json{{"schema_version", kReportSchemaVersion}, {"apps", apps}};
}

json to_json(const OverlapMatrix& matrix) {
  json rows = json::array();
  for (PrivacyType derived : kAllPrivacyTypes) {
    json cells = json::object();
    for (PrivacyType declared : kAllPrivacyTypes) {
      auto r = static_cast<size_t>(derived);
      auto c = static_cast<size_t>(declared);
      cells[to_string(declared)] = {
          {"count", matrix.counts[r][c]},
          {"missing_declaration", matrix.missing_declaration[r][c]}};
    }
    rows.push_back(json{{"derived", to_string(derived)}, {"declared", cells}});
  }
  return json{{"schema_version", kReportSchemaVersion},
              {"corpus_size", matrix.corpus_size},
              {"rows", rows}};
}

json to_json(const FacetReport& report) {
  json buckets = json::array();
  for (const auto& bucket : report.buckets) {
    json cells = json::object();
    for (const auto& [type, cell] : bucket.cells) {
      cells[to_string(type)] = {
          {"label_count", cell.label_count},
          {"policy_count", cell.policy_count},
          {"label_ratio", cell.label_ratio},
          {"policy_ratio", cell.policy_ratio},
          {"policy_abs_uncertainty", cell.policy_abs_uncertainty}};
    }
    buckets.push_back(json{{"bucket", bucket.bucket},
                           {"size", bucket.size},
                           {"privacy_types", cells}});
  }
  return json{{"schema_version", kReportSchemaVersion},
              {"facet", to_string(report.facet)},
              {"missing_metadata", report.missing_metadata},
              {"buckets", buckets}};
}

json to_json(const ChildrenAuditReport& report) {
  json buckets = json::array();
  for (const auto& bucket : report.buckets) {
    json by_type = json::object();
    for (const auto& [type, cell] : bucket.by_declared_type) {
      by_type[to_string(type)] = {{"declared", cell.declared},
                                  {"children_overlay", cell.children_overlay},
                                  {"abs_uncertainty", cell.abs_uncertainty}};
    }
    buckets.push_back(json{{"rating", bucket.rating},
                           {"size", bucket.size},
                           {"children_overlay", bucket.children_overlay},
                           {"overlay_abs_uncertainty", bucket.overlay_abs_uncertainty},
                           {"by_declared_type", by_type}});
  }
  return json{{"schema_version", kReportSchemaVersion}, {"buckets", buckets},
              {"missing_metadata", report.missing_metadata}};
}

json to_json(const templates::TemplateScanReport& report) {
  json by_policy = json::object();
  for (const auto& [policy_id, matches] : report.matches_by_policy) {
    json list = json::array();
    for (const auto& m : matches) {
      list.push_back(json{{"template", m.template_name},
                          {"policy_cover", m.policy_cover},
                          {"template_cover", m.template_cover}});
    }
    by_policy[policy_id] = list;
  }
  json by_template = json::object();
  for (const auto& [name, policies] : report.policies_by_template) {
    by_template[name] = json{{"policies", policies.size()}, {"policy_ids", policies}};
  }
  return json{{"schema_version", kReportSchemaVersion},
              {"policies_scanned", report.policies_scanned},
              {"matches_by_policy", by_policy},
              {"templates", by_template}};
}

json to_json(const TemplateBreakdownReport& report) {
  json templates = json::array();
  for (const auto& summary : report.templates) {
    json by_type = json::object();
    for (const auto& [type, counts] : summary.by_type) {
      by_type[to_string(type)] = {{"label_only", counts.label_only},
                                  {"policy_only", counts.policy_only},
                                  {"overlap", counts.overlap}};
    }
    templates.push_back(json{{"template", summary.template_name},
                             {"policies", summary.policies},
                             {"apps", summary.apps},
                             {"privacy_types", by_type}});
  }
  return json{{"schema_version", kReportSchemaVersion}, {"templates", templates}};
}

void write_json_report(const json& body, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IOFailure("cannot write report: " + path);
  out << body.dump(2) << '\n';
  if (!out) throw IOFailure("write failed: " + path);
}

namespace {

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IOFailure("cannot write report: " + path);
  out << text;
  if (!out) throw IOFailure("write failed: " + path);
}

std::string matrix_csv(const OverlapMatrix& matrix) {
  std::ostringstream out;
  out << "policy\\label";
  for (PrivacyType declared : kAllPrivacyTypes) out << ',' << to_string(declared);
  out << '\n';
  for (PrivacyType derived : kAllPrivacyTypes) {
    out << to_string(derived);
    for (PrivacyType declared : kAllPrivacyTypes) {
      out << ',' << matrix.cell(derived, declared);
    }
    out << '\n';
  }
  return out.str();
}

std::string facet_csv(const FacetReport& report) {
  std::ostringstream out;
  out << "bucket,size,privacy_type,label_count,policy_count,label_ratio,"
         "policy_ratio,policy_abs_uncertainty\n";
  for (const auto& bucket : report.buckets) {
    for (const auto& [type, cell] : bucket.cells) {
      out << bucket.bucket << ',' << bucket.size << ',' << to_string(type) << ','
          << cell.label_count << ',' << cell.policy_count << ','
          << cell.label_ratio << ',' << cell.policy_ratio << ','
          << cell.policy_abs_uncertainty << '\n';
    }
  }
  return out.str();
}

std::string children_csv(const ChildrenAuditReport& report) {
  std::ostringstream out;
  out << "rating,size,children_overlay,overlay_abs_uncertainty,privacy_type,"
         "declared,type_children_overlay,type_abs_uncertainty\n";
  for (const auto& bucket : report.buckets) {
    for (const auto& [type, cell] : bucket.by_declared_type) {
      out << bucket.rating << ',' << bucket.size << ',' << bucket.children_overlay
          << ',' << bucket.overlay_abs_uncertainty << ',' << to_string(type) << ','
          << cell.declared << ',' << cell.children_overlay << ','
          << cell.abs_uncertainty << '\n';
    }
  }
  return out.str();
}

std::string discrepancy_csv(const std::vector<AppDiscrepancy>& discrepancies) {
  std::ostringstream out;
  out << "app_id,types_label_only,types_policy_only,types_overlap,"
         "purposes_label_only,purposes_policy_only,purposes_overlap,"
         "categories_label_only,categories_policy_only,categories_overlap,"
         "dnc_contradiction\n";
  for (const auto& d : discrepancies) {
    out << d.app_id << ',' << d.types.label_only.size() << ','
        << d.types.policy_only.size() << ',' << d.types.overlap.size() << ','
        << d.purposes.label_only.size() << ',' << d.purposes.policy_only.size()
        << ',' << d.purposes.overlap.size() << ','
        << d.categories.label_only.size() << ','
        << d.categories.policy_only.size() << ',' << d.categories.overlap.size()
        << ',' << (d.dnc_contradiction ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string scan_csv(const templates::TemplateScanReport& report) {
  std::ostringstream out;
  out << "template,policies\n";
  for (const auto& [name, policies] : report.policies_by_template) {
    out << name << ',' << policies.size() << '\n';
  }
  return out.str();
}

std::string breakdown_csv(const TemplateBreakdownReport& report) {
  std::ostringstream out;
  out << "template,policies,apps,privacy_type,label_only,policy_only,overlap\n";
  for (const auto& summary : report.templates) {
    for (const auto& [type, counts] : summary.by_type) {
      out << summary.template_name << ',' << summary.policies << ','
          << summary.apps << ',' << to_string(type) << ',' << counts.label_only
          << ',' << counts.policy_only << ',' << counts.overlap << '\n';
    }
  }
  return out.str();
}

}  // namespace

void emit_report(const std::vector<AppDiscrepancy>& report, ReportFormat format,
                 const std::string& path) {
  if (format == ReportFormat::Json) write_json_report(to_json(report), path);
  else write_text(discrepancy_csv(report), path);
}

void emit_report(const OverlapMatrix& report, ReportFormat format,
                 const std::string& path) {
  if (format == ReportFormat::Json) write_json_report(to_json(report), path);
  else write_text(matrix_csv(report), path);
}

void emit_report(const FacetReport& report, ReportFormat format,
                 const std::string& path) {
  if (format == ReportFormat::Json) write_json_report(to_json(report), path);
  else write_text(facet_csv(report), path);
}

void emit_report(const ChildrenAuditReport& report, ReportFormat format,
                 const std::string& path) {
  if (format == ReportFormat::Json) write_json_report(to_json(report), path);
  else write_text(children_csv(report), path);
}

void emit_report(const templates::TemplateScanReport& report, ReportFormat format,
                 const std::string& path) {
  if (format == ReportFormat::Json) write_json_report(to_json(report), path);
  else write_text(scan_csv(report), path);
}

void emit_report(const TemplateBreakdownReport& report, ReportFormat format,
                 const std::string& path) {
  if (format == ReportFormat::Json) write_json_report(to_json(report), path);
  else write_text(breakdown_csv(report), path);
}

}  // namespace labelaudit::compare
