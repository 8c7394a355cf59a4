#pragma once

// Single-zone lumped thermal model. One node holds the air and the
// effective fabric mass; each envelope surface couples it to a sol-air
// temperature through its resistance chain, windows add transmitted solar,
// and ventilation exchanges air with the outdoors.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecodom/building.hpp"
#include "ecodom/solar.hpp"
#include "ecodom/timeseries.hpp"
#include "ecodom/ventilation.hpp"

namespace ecodom {

inline constexpr double kAirDensity = 1.2;         // kg/m3
inline constexpr double kAirHeatCapacity = 1005.0;  // J/(kg.K)

enum class SurfaceKind { Roof, Wall, Window };

std::string_view to_string(SurfaceKind k);

struct SurfaceModel {
  std::string id;
  SurfaceKind kind = SurfaceKind::Wall;
  double area_m2 = 0.0;
  double azimuth_deg = 0.0;  // outward normal
  double tilt_deg = 90.0;    // 0 horizontal, 90 vertical
  double absorptivity = 0.6;
  double resistance = 0.0;   // layers only; films are added from h_ext / h_int
  double h_ext = 25.0;
  double h_int = 8.0;
  OverhangGeometry overhang;
  // Replaces the overhang geometry when set; applies to the direct beam.
  std::optional<double> shading_fraction_override;
  // Windows: share of incident solar admitted as heat.
  double shgc = 0.0;
  // Multiplies all incident solar (mobile louvers, ventilated attic, full shading).
  double solar_factor = 1.0;

  double total_resistance() const { return 1.0 / h_ext + resistance + 1.0 / h_int; }
  double conductance() const { return area_m2 / total_resistance(); }
};

enum class VentilationMode {
  Closed,  // infiltration only
  Cross,   // wind-driven flow through the declared facade pair, plus infiltration
};

std::string_view to_string(VentilationMode m);
std::optional<VentilationMode> parse_ventilation_mode(std::string_view s);

struct ZoneModel {
  std::string id = "zone";
  double latitude = 0.0;
  double longitude = 0.0;
  double floor_area_m2 = 0.0;
  double volume_m3 = 0.0;
  MassClass mass = MassClass::Heavy;
  double capacitance_j_k = 0.0;
  std::vector<SurfaceModel> surfaces;
  // Interior area held at air temperature in the radiant balance (floor and,
  // when the roof is not exposed, ceiling).
  double adiabatic_area_m2 = 0.0;
  double internal_gains_w = 0.0;
  // 24 local-hour multipliers of internal_gains_w; empty means constant.
  std::vector<double> gains_profile;
  double utc_offset_hours = 4.0;
  double infiltration_ach = 1.0;
  VentilationMode ventilation = VentilationMode::Closed;
  Apertures apertures;
  double ventilation_axis_azimuth_deg = 0.0;

  /// Empty iff capacitance, volume, surfaces and profile are consistent.
  std::vector<std::string> problems() const;
};

/// kJ/K per m2 of floor: light 80, heavy 260.
double mass_capacitance_per_m2(MassClass m);

struct ZoneOptions {
  bool roof_exposed = true;  // false models an intermediate storey: no roof, adiabatic ceiling
  VentilationMode ventilation = VentilationMode::Closed;
  double infiltration_ach = 1.0;
  std::optional<double> internal_gains_w;
  std::optional<MassClass> mass;
  std::optional<std::string> facade_pair;  // cross mode; first declared pair by default
  double discharge_coefficient = 0.6;
  double delta_cp = 0.5;
  double h_ext = 25.0;
  double h_int = 8.0;
  double mobile_shading_fraction = 0.9;
  double ventilated_attic_solar_factor = 0.3;
  double closed_attic_resistance = 0.16;
  double utc_offset_hours = 4.0;
};

/// Apertures in series [So1, Si1, Si2, So2] for a declared facade pair.
Apertures cross_ventilation_apertures(const BuildingDescription& building, const FacadePair& pair,
                                      double discharge_coefficient = 0.6, double delta_cp = 0.5);

/// Throws InputError when the building has no thermal section, or when cross
/// ventilation is requested without a usable facade pair.
ZoneModel zone_from_building(const BuildingDescription& building, const ZoneOptions& options = {});

struct SimulationOptions {
  int substeps = 4;     // implicit steps per hour
  int warmup_days = 3;  // repeats of the first 24 h, started from their mean balance temperature
};

struct SimulationResult {
  std::vector<Timestamp> time;
  std::vector<double> outdoor_c;
  std::vector<double> air_c;
  std::vector<double> mean_radiant_c;
  std::vector<double> resultant_c;
  std::vector<double> ach;
  std::vector<std::string> surface_ids;
  std::vector<SurfaceKind> surface_kinds;
  std::vector<std::vector<double>> surface_gains_w;  // [surface][hour], conduction plus transmitted solar
  std::vector<double> max_residual;  // per hour, relative to gross gains
  double capacitance_j_k = 0.0;
  double stored_energy_j = 0.0;      // C (T_last - T_first) over the recorded span
  double net_inflow_j = 0.0;         // integrated heat flows over the same span
  double gross_gains_j = 0.0;        // integrated positive heat flows

  std::size_t size() const { return time.size(); }
  /// Daily means of resultant temperature per local day.
  std::vector<double> daily_mean_resultant(double utc_offset_hours = 0.0) const;
};

/// Implicit Euler with forcing interpolated linearly inside each hour.
/// Throws InputError for fewer than 24 records or for gaps (all missing
/// hours are listed), and std::invalid_argument for an inconsistent zone.
SimulationResult simulate(const ZoneModel& zone, const WeatherSeries& weather, const SimulationOptions& options = {});

struct GainShares {
  double roof = 0.0;
  double walls = 0.0;
  double windows = 0.0;
};

/// Time-integrated positive gain of each surface, grouped by kind and
/// normalised to sum to one. All zero when no surface ever gains heat.
GainShares gain_breakdown(const SimulationResult& result);

/// Indoor series of a simulated zone. Relative humidity assumes the outdoor
/// humidity ratio indoors; air speed is left unset.
IndoorSeries to_indoor_series(const SimulationResult& result, const WeatherSeries& weather,
                              const std::string& zone_id);

void write_simulation_csv(const SimulationResult& result, std::ostream& out);

/// Scenario file: selects inputs and overrides zone and solver options.
struct Scenario {
  std::optional<std::filesystem::path> building;
  std::optional<std::filesystem::path> weather;
  ZoneOptions zone;
  SimulationOptions solver;
};

/// Unknown keys and bad values raise InputError naming the key. Relative
/// paths resolve against `base_dir`.
Scenario parse_scenario(const nlohmann::json& doc, const std::string& source,
                        const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace ecodom
