#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "labelaudit/compare/compare.hpp"
#include "labelaudit/compare/facets.hpp"
#include "labelaudit/templates/templates.hpp"

namespace labelaudit::compare {

enum class ReportFormat { Json, Csv };

inline constexpr int kReportSchemaVersion = 1;

// Per-template join of template matches with per-app discrepancies,
// mirroring the template overview table.
struct TemplateTypeBreakdown {
  size_t label_only = 0;
  size_t policy_only = 0;
  size_t overlap = 0;
};

struct TemplateSummary {
  std::string template_name;
  size_t policies = 0;
  size_t apps = 0;
  std::map<PrivacyType, TemplateTypeBreakdown> by_type;
};

struct TemplateBreakdownReport {
  std::vector<TemplateSummary> templates;
};

TemplateBreakdownReport template_breakdown(
    const templates::TemplateScanReport& scan,
    const std::vector<AppAuditRow>& rows,
    const std::map<std::string, std::string>& policy_by_app);

nlohmann::json to_json(const AppDiscrepancy& discrepancy);
nlohmann::json to_json(const std::vector<AppDiscrepancy>& discrepancies);
nlohmann::json to_json(const OverlapMatrix& matrix);
nlohmann::json to_json(const FacetReport& report);
nlohmann::json to_json(const ChildrenAuditReport& report);
nlohmann::json to_json(const templates::TemplateScanReport& report);
nlohmann::json to_json(const TemplateBreakdownReport& report);

// Deterministic writers; same report twice gives byte-identical files.
// Throws IOFailure on unwritable paths.
void emit_report(const std::vector<AppDiscrepancy>& report, ReportFormat format,
                 const std::string& path);
void emit_report(const OverlapMatrix& report, ReportFormat format,
                 const std::string& path);
void emit_report(const FacetReport& report, ReportFormat format,
                 const std::string& path);
void emit_report(const ChildrenAuditReport& report, ReportFormat format,
                 const std::string& path);
void emit_report(const templates::TemplateScanReport& report,
                 ReportFormat format, const std::string& path);
void emit_report(const TemplateBreakdownReport& report, ReportFormat format,
                 const std::string& path);

void write_json_report(const nlohmann::json& body, const std::string& path);

}  // namespace labelaudit::compare
