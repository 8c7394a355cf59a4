#pragma once

// Versioned, data-driven rule catalogue. The tables ship as a JSON document
// (data/catalogue/ecodom-reunion.json, also compiled into the library) whose
// `tables` object is protected by an FNV-1a 64 checksum over its canonical
// serialisation (sorted keys, no whitespace).

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecodom/building.hpp"

namespace ecodom {

/// Polystyrene / polyurethane thicknesses (cm) for one roof colour.
struct RoofRow {
  double polystyrene_cm = 0.0;
  double polyurethane_cm = 0.0;
};

/// Light and Medium columns only; dark walls have no published values.
using OrientationRow = std::map<Orientation, double>;
using ColorColumns = std::map<Color, OrientationRow>;
using ConstructionTable = std::map<WallConstruction, ColorColumns>;

struct CollectorBand {
  std::string label;
  int min_main_rooms = 1;
  std::optional<int> max_main_rooms;  // open-ended when empty
  double area_m2 = 0.0;
};

class RuleCatalogue {
 public:
  /// The catalogue shipped with the library.
  static const RuleCatalogue& builtin();

  /// Throws InputError on malformed documents or checksum mismatch.
  static RuleCatalogue from_json(const nlohmann::json& doc, std::string_view source = "<json>");
  static RuleCatalogue load(const std::filesystem::path& path);

  /// FNV-1a 64 over `tables.dump()`, formatted `fnv1a64:<16 hex digits>`.
  static std::string checksum_of(const nlohmann::json& tables);

  const std::string& version() const { return version_; }
  const std::string& checksum() const { return checksum_; }
  const std::string& region() const { return region_; }

  double polystyrene_conductivity() const { return lambda_polystyrene_; }
  double polyurethane_conductivity() const { return lambda_polyurethane_; }
  double wall_reference_conductivity() const { return lambda_wall_reference_; }

  /// Simple (terraced, tilted without attic, closed attic) or well-ventilated attic block.
  const RoofRow& roof_row(Color color, bool well_ventilated_attic) const;

  /// Exact cell lookup. Falls back to a row with the same base resistance
  /// when the construction has no row of its own (the two concrete rows of
  /// the overhang and insulation tables). Empty for dark walls.
  std::optional<double> overhang_ratio(WallConstruction c, Color color, Orientation o) const;
  std::optional<double> wall_insulation_cm(WallConstruction c, Color color, Orientation o) const;

  double window_ratio(Orientation o) const { return window_ratio_.at(o); }
  double porosity_min() const { return porosity_min_; }

  /// Throws std::out_of_range when no band covers the dwelling type.
  const CollectorBand& collector_band(int main_rooms) const;
  double storage_min_l_per_m2() const { return storage_min_; }
  double storage_max_l_per_m2() const { return storage_max_; }
  double productivity_min_kwh_m2() const { return productivity_min_; }

  const ConstructionTable& overhang_table() const { return overhang_; }
  const ConstructionTable& wall_insulation_table() const { return wall_insulation_; }
  const std::vector<CollectorBand>& collector_bands() const { return collector_; }

 private:
  std::optional<double> lookup(const ConstructionTable& t, WallConstruction c, Color color,
                               Orientation o) const;

  std::string version_;
  std::string checksum_;
  std::string region_;
  double lambda_polystyrene_ = 0.041;
  double lambda_polyurethane_ = 0.029;
  double lambda_wall_reference_ = 0.041;
  std::map<Color, RoofRow> roof_simple_;
  std::map<Color, RoofRow> roof_attic_;
  std::map<WallConstruction, double> base_resistance_;
  ConstructionTable overhang_;
  ConstructionTable wall_insulation_;
  std::map<Orientation, double> window_ratio_;
  double porosity_min_ = 0.25;
  std::vector<CollectorBand> collector_;
  double storage_min_ = 60.0;
  double storage_max_ = 120.0;
  double productivity_min_ = 700.0;
};

}  // namespace ecodom
