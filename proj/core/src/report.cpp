#include "ecodom/report.hpp"

#include <fmt/format.h>

namespace ecodom {

nlohmann::ordered_json report_to_json(const ComplianceReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["report_format"] = "ecodom-report";
  doc["report_format_version"] = 1;
  doc["building"] = report.building;
  doc["catalogue_version"] = report.catalogue_version;
  doc["catalogue_checksum"] = report.catalogue_checksum;
  doc["overall"] = std::string(to_string(report.overall));
  ordered_json summary;
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::NotApplicable, Verdict::Informational}) {
    summary[std::string(to_string(v))] = report.count(v);
  }
  doc["summary"] = std::move(summary);

  ordered_json findings = ordered_json::array();
  for (const auto& f : report.findings) {
    ordered_json j;
    j["rule_id"] = f.rule_id;
    j["subject"] = f.subject;
    j["verdict"] = std::string(to_string(f.verdict));
    j["quantity"] = f.quantity;
    j["measured"] = f.measured ? ordered_json(*f.measured) : ordered_json(nullptr);
    j["required"] = f.required ? ordered_json(*f.required) : ordered_json(nullptr);
    j["comparison"] = std::string(to_string(f.comparison));
    j["message"] = f.message;
    j["remediation"] = f.remediation;
    ordered_json remedies = ordered_json::array();
    for (const auto& r : f.remedies) {
      remedies.push_back(ordered_json{{"parameter", r.parameter}, {"value", r.value}, {"unit", r.unit}});
    }
    j["remedies"] = std::move(remedies);
    findings.push_back(std::move(j));
  }
  doc["findings"] = std::move(findings);
  return doc;
}

std::string report_to_text(const ComplianceReport& report) {
  std::string out;
  out += fmt::format("ECODOM compliance report: {}\n", report.building);
  out += fmt::format("catalogue: {} ({})\n", report.catalogue_version, report.catalogue_checksum);
  out += fmt::format("overall: {}  (pass {}, fail {}, n/a {}, info {})\n\n",
                     report.overall == Verdict::Pass ? "PASS" : "FAIL", report.count(Verdict::Pass),
                     report.count(Verdict::Fail), report.count(Verdict::NotApplicable),
                     report.count(Verdict::Informational));
  for (const auto& f : report.findings) {
    const char* tag = "PASS";
    switch (f.verdict) {
      case Verdict::Pass: tag = "PASS"; break;
      case Verdict::Fail: tag = "FAIL"; break;
      case Verdict::NotApplicable: tag = "N/A "; break;
      case Verdict::Informational: tag = "INFO"; break;
    }
    out += fmt::format("[{}] {:<7} {}\n", tag, f.rule_id, f.subject);
    out += fmt::format("       {}\n", f.message);
    if (f.measured && f.required) {
      out += fmt::format("       {}: measured {:.4g}, required {} {:.4g}\n", f.quantity, *f.measured,
                         to_string(f.comparison), *f.required);
    }
    if (!f.remediation.empty()) out += fmt::format("       fix: {}\n", f.remediation);
  }
  return out;
}

}  // namespace ecodom
