#pragma once

// Domain model of a single dwelling as described for prescriptive checking
// and for the simplified thermal model. Areas are m^2, lengths m, insulation
// thicknesses cm, conductivities W/(m.K), resistances m^2.K/W.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecodom/error.hpp"

namespace ecodom {

enum class Orientation { North, East, South, West };

std::string_view to_string(Orientation o);
std::optional<Orientation> parse_orientation(std::string_view s);

/// Azimuth of the outward normal, degrees clockwise from North.
double azimuth_of(Orientation o);

Orientation opposite(Orientation o);

/// Snaps an azimuth in [0, 360) to the nearest cardinal direction.
///
/// Ties go East first, then North, then South: 45 and 135 map to East,
/// 315 maps to North and 225 maps to South. The resulting arcs are
/// North [315, 45), East [45, 135], South (135, 225], West (225, 315).
/// Throws std::out_of_range outside [0, 360) or for non-finite input.
Orientation orientation_from_azimuth(double azimuth_deg);

enum class Color { Light, Medium, Dark };

std::string_view to_string(Color c);
std::optional<Color> parse_color(std::string_view s);

/// Solar absorptivity of a colour class: 0.4 / 0.6 / 0.8.
double absorptivity(Color c);

struct InsulationLayer {
  std::string material = "none";
  double conductivity = 0.041;
  double thickness_cm = 0.0;
  // Attests that a hygroscopic material (mineral wool) is protected from
  // ambient humidity.
  bool humidity_protected = false;

  double resistance() const { return thickness_cm / 100.0 / conductivity; }
  bool is_mineral_wool() const;
};

enum class AtticRegime { None, ClosedOrBarelyVentilated, WellVentilated };

std::string_view to_string(AtticRegime a);
std::optional<AtticRegime> parse_attic(std::string_view s);

struct RoofSpec {
  std::string id = "roof";
  Color color = Color::Medium;
  AtticRegime attic = AtticRegime::None;
  InsulationLayer insulation;
  double area_m2 = 0.0;
  // Resistance of the bare roof structure, excluding insulation and films.
  double structure_resistance = 0.0;
};

enum class WallConstruction { PouredConcrete15, Concrete20, HollowConcreteBlock, Wood };

std::string_view to_string(WallConstruction w);
std::optional<WallConstruction> parse_construction(std::string_view s);

/// 0.1 for both concretes, 0.2 for hollow blocks, 0.5 for wood.
double base_resistance(WallConstruction w);

struct WallSpec {
  std::string id;
  WallConstruction construction = WallConstruction::HollowConcreteBlock;
  Color color = Color::Light;
  Orientation orientation = Orientation::North;
  double area_m2 = 0.0;
  double overhang_depth_m = 0.0;
  // Vertical distance from the overhang underside to the bottom of the wall.
  double overhang_height_m = 0.0;
  InsulationLayer insulation;
  // Vertical shading or ventilated double skin covering the whole wall.
  bool full_shading = false;

  double overhang_ratio() const;
};

enum class ShadingCase {
  Case1,  // overhang set `offset_m` above the window head: ratio d/(2a+h)
  Case2,  // overhang at the window head: ratio d/h
};

struct WindowSpec {
  std::string id;
  Orientation orientation = Orientation::North;
  double glazed_area_m2 = 0.0;
  ShadingCase shading_case = ShadingCase::Case2;
  double overhang_depth_m = 0.0;
  double height_m = 0.0;
  double offset_m = 0.0;
  // Venetian blinds or opaque mobile louvers.
  bool mobile_shading = false;

  double overhang_ratio() const;
  /// Depth the overhang needs for a given required ratio.
  double depth_for_ratio(double ratio) const;
};

enum class RoomKind { Main, Service };

struct FacadeMembership {
  std::string facade_id;
  double gross_area_m2 = 0.0;
};

struct Opening {
  std::string id;
  double net_area_m2 = 0.0;
  // Set for external openings, empty for internal ones.
  std::optional<std::string> facade_id;

  bool is_external() const { return facade_id.has_value(); }
};

struct Room {
  std::string id;
  RoomKind kind = RoomKind::Main;
  int floor_level = 0;
  bool under_roof = false;
  std::vector<FacadeMembership> facades;
  std::vector<Opening> external_openings;
  std::vector<Opening> internal_openings;

  double gross_area_on(std::string_view facade_id) const;
  double opening_area_on(std::string_view facade_id) const;
  double internal_opening_area() const;
  bool touches(std::string_view facade_id) const;
};

struct Facade {
  std::string id;
  double azimuth_deg = 0.0;

  Orientation orientation() const { return orientation_from_azimuth(azimuth_deg); }
};

/// Two opposite facades forming one cross-ventilation axis. When `level` is
/// set only rooms on that floor are considered.
struct FacadePair {
  std::string id;
  std::string facade_1;
  std::string facade_2;
  std::optional<int> level;
};

enum class WaterHeaterKind { Solar, Electric, Gas };

std::string_view to_string(WaterHeaterKind k);
std::optional<WaterHeaterKind> parse_water_heater_kind(std::string_view s);

struct WaterHeaterSpec {
  WaterHeaterKind kind = WaterHeaterKind::Solar;
  double collector_area_m2 = 0.0;
  double tank_volume_l = 0.0;
  double annual_productivity_kwh_m2 = 0.0;
  bool certified = false;
};

enum class MassClass { Light, Heavy };

std::string_view to_string(MassClass m);
std::optional<MassClass> parse_mass_class(std::string_view s);

/// Inputs only the thermal model needs.
struct ThermalProperties {
  double floor_area_m2 = 0.0;
  double ceiling_height_m = 2.5;
  MassClass mass = MassClass::Heavy;
  double window_resistance = 0.0;  // glazing layers, films excluded
  double window_shgc = 0.8;
  double internal_gains_w = 0.0;
};

struct BuildingDescription {
  std::string name;
  double latitude = 0.0;
  double longitude = 0.0;
  int dwelling_type = 1;  // number of main rooms (F1, F2, ...)
  std::vector<Facade> facades;
  std::vector<Room> rooms;
  std::vector<WallSpec> walls;
  std::optional<RoofSpec> roof;
  std::vector<WindowSpec> windows;
  std::vector<FacadePair> facade_pairs;
  std::optional<WaterHeaterSpec> water_heater;
  std::optional<ThermalProperties> thermal;
  std::string vegetation_note;

  const Facade* find_facade(std::string_view id) const;
};

/// Empty iff every type invariant and every cross reference holds.
std::vector<ValidationError> validate(const BuildingDescription& building);

/// Throws ValidationFailed when validate() reports anything.
void require_valid(const BuildingDescription& building);

struct PorosityInputs {
  double so1 = 0.0;
  double so2 = 0.0;
  double sp1 = 0.0;
  double sp2 = 0.0;
};

struct PairPorosity {
  std::string pair_id;
  std::string facade_1;
  std::string facade_2;
  double so1 = 0.0;  // net external openings of main rooms, facade 1
  double so2 = 0.0;
  double sp1 = 0.0;  // gross main-room facade area, facade 1
  double sp2 = 0.0;
  double sp = 0.0;   // (sp1 + sp2) / 2
  double p1 = 0.0;   // so1 / sp
  double p2 = 0.0;
  double si1 = 0.0;  // internal path area on the facade-1 side
  double si2 = 0.0;
};

/// P1 = So1/Sp, P2 = So2/Sp with Sp = (Sp1 + Sp2)/2. Throws std::domain_error
/// when Sp is zero.
PairPorosity porosity(const PorosityInputs& in);

/// Aggregates main rooms for one declared pair.
///
/// Rooms touching only facade 1 contribute their internal openings to Si1
/// (symmetrically for facade 2). A room touching both facades is its own
/// cross-ventilation path, so its external openings on each facade count
/// toward that side's internal path area.
PairPorosity pair_porosity(const BuildingDescription& building, const FacadePair& pair);

/// One entry per declared pair, in declaration order.
std::vector<PairPorosity> facade_porosities(const BuildingDescription& building);

}  // namespace ecodom
