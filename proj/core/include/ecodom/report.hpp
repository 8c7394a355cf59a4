#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ecodom/rules.hpp"

namespace ecodom {

/// Machine-readable report. Field order and names are stable (format
/// "ecodom-report", version 1); see docs/formats.md.
nlohmann::ordered_json report_to_json(const ComplianceReport& report);

/// Human-readable, one block per finding.
std::string report_to_text(const ComplianceReport& report);

}  // namespace ecodom
