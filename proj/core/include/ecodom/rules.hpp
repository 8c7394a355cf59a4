#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecodom/building.hpp"
#include "ecodom/catalogue.hpp"

namespace ecodom {

enum class Verdict { Pass, Fail, NotApplicable, Informational };

std::string_view to_string(Verdict v);

enum class Comparison { AtLeast, AtMost };

std::string_view to_string(Comparison c);

/// A concrete change that makes the finding pass: set `parameter` to
/// `value` (`unit`). Values are absolute targets, not deltas, except for
/// parameters whose name ends in `_added`.
struct Remedy {
  std::string parameter;
  double value = 0.0;
  std::string unit;

  bool operator==(const Remedy&) const = default;
};

struct Finding {
  std::string rule_id;
  std::string subject;
  Verdict verdict = Verdict::Pass;
  std::string quantity;  // what `measured` and `required` measure
  std::optional<double> measured;
  std::optional<double> required;
  Comparison comparison = Comparison::AtLeast;
  std::string message;
  std::string remediation;
  std::vector<Remedy> remedies;
};

struct ComplianceReport {
  std::string building;
  std::string catalogue_version;
  std::string catalogue_checksum;
  std::vector<Finding> findings;
  Verdict overall = Verdict::Pass;

  std::size_t count(Verdict v) const;
};

/// How Si1/Si2 are compared against the external areas So1 and So2:
/// Min requires Si >= min(So1, So2), Max requires Si >= max(So1, So2).
enum class SiRule { Min, Max };

std::optional<SiRule> parse_si_rule(std::string_view s);

struct RuleOptions {
  SiRule si_rule = SiRule::Min;
};

// Rule ids (stable, sorted lexicographically in reports).
namespace rule {
inline constexpr const char* kCollectorArea = "DHW-1";
inline constexpr const char* kStorageRatio = "DHW-2";
inline constexpr const char* kProductivity = "DHW-3";
inline constexpr const char* kCertification = "DHW-4";
inline constexpr const char* kWaterHeaterNote = "DHW-5";
inline constexpr const char* kRoofInsulation = "ROOF-1";
inline constexpr const char* kRoofHumidity = "ROOF-2";
inline constexpr const char* kSite = "SITE-1";
inline constexpr const char* kFacadePairs = "VENT-1";
inline constexpr const char* kExternalPorosity = "VENT-2";
inline constexpr const char* kInternalPorosity = "VENT-3";
inline constexpr const char* kRoomPorosity = "VENT-4";
inline constexpr const char* kRoomLayout = "VENT-5";
inline constexpr const char* kWallProtection = "WALL-1";
inline constexpr const char* kWallHumidity = "WALL-2";
inline constexpr const char* kWindowProtection = "WIN-1";
}  // namespace rule

/// Table thickness (cm) for the reference class nearest the material:
/// polyurethane column for conductivity <= 0.029, polystyrene column up to
/// 0.041, and beyond that the polystyrene value scaled to the same thermal
/// resistance.
double required_roof_insulation(const RuleCatalogue& cat, Color color, const InsulationLayer& material,
                                AtticRegime attic);

/// Minimum resistance (m2K/W) the insulation must reach; shared by the
/// thickness and resistance forms of the roof rule.
double required_roof_resistance(const RuleCatalogue& cat, Color color, const InsulationLayer& material,
                                AtticRegime attic);

Finding check_roof(const RoofSpec& roof, const RuleCatalogue& cat);

/// Empty for dark walls (no published values).
std::optional<double> required_overhang_ratio(const RuleCatalogue& cat, WallConstruction c, Color color,
                                              Orientation o);

/// Thickness in cm at the catalogue's reference conductivity; empty for dark walls.
std::optional<double> required_wall_insulation(const RuleCatalogue& cat, WallConstruction c, Color color,
                                               Orientation o);

/// Passes when the wall is fully shaded, or its overhang ratio reaches the
/// table value, or its insulation reaches the table resistance.
Finding check_wall(const WallSpec& wall, const RuleCatalogue& cat);

double required_window_ratio(const RuleCatalogue& cat, Orientation o);

Finding check_window(const WindowSpec& window, const RuleCatalogue& cat);

std::vector<Finding> check_ventilation(const BuildingDescription& building, const RuleCatalogue& cat,
                                       const RuleOptions& options = {});

std::vector<Finding> check_water_heater(const WaterHeaterSpec& spec, int dwelling_type,
                                        const RuleCatalogue& cat);

/// Validates (throwing ValidationFailed), runs every rule and sorts findings
/// by rule id then subject.
ComplianceReport compliance_report(const BuildingDescription& building, const RuleCatalogue& cat,
                                   const RuleOptions& options = {});

}  // namespace ecodom
