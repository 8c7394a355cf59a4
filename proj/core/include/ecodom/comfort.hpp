#pragma once

// Comfort-zone classification on the psychrometric plane and statistics
// over indoor series.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecodom/psychro.hpp"
#include "ecodom/timeseries.hpp"

namespace ecodom {

struct PsychroPoint {
  double temperature_c = 0.0;        // resultant when measured, else dry bulb
  double humidity_ratio_g_kg = 0.0;
  double air_speed_m_s = 0.0;
};

/// Humidity ratio is evaluated at the air temperature, since relative
/// humidity refers to it; the abscissa is the comfort temperature.
PsychroPoint psychro_point(const IndoorRecord& record, double pressure_pa = kStandardPressurePa);

struct ZoneVertex {
  double temperature_c = 0.0;
  double humidity_ratio_g_kg = 0.0;
  bool operator==(const ZoneVertex&) const = default;
};

/// Simple polygon in (T, w) plus an air-speed rule that pushes the warm
/// edge right by `extension_c_per_m_s` per m/s, never beyond
/// `max_temperature_c`.
class ComfortZone {
 public:
  /// (22, 4) (29, 4) (29, 17) (22, 17); +2 C per m/s capped at 32 C.
  static ComfortZone default_zone();

  /// Throws std::invalid_argument if the polygon has fewer than three
  /// vertices, zero area, or self-intersects.
  ComfortZone(std::vector<ZoneVertex> polygon, double extension_c_per_m_s, double max_temperature_c);

  static ComfortZone from_json(const nlohmann::json& doc, const std::string& source);
  static ComfortZone load(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;

  const std::vector<ZoneVertex>& polygon() const { return polygon_; }
  double extension_c_per_m_s() const { return extension_; }
  double max_temperature_c() const { return max_t_; }

  /// Closed temperature intervals of the zone along w = const, after the
  /// air-speed extension. Empty when w is outside the zone.
  std::vector<std::pair<double, double>> slice(double humidity_ratio_g_kg, double air_speed_m_s) const;

  /// Boundary counts as inside.
  bool contains(const PsychroPoint& p) const;

  /// Temperature distance to the zone at the point's humidity ratio, which is
  /// first clamped into the zone's humidity span. Zero inside.
  double exceedance_c(const PsychroPoint& p) const;

  double min_humidity_ratio() const;
  double max_humidity_ratio() const;

 private:
  std::vector<ZoneVertex> polygon_;
  double extension_;
  double max_t_;
};

enum class ComfortClass { Inside, Outside };

ComfortClass classify(const PsychroPoint& point, const ComfortZone& zone);

struct ComfortStats {
  std::size_t samples = 0;
  std::size_t outside_samples = 0;
  double hours = 0.0;
  double discomfort_fraction = 0.0;  // outside samples / samples
  double mean_exceedance_c = 0.0;    // over outside samples
  double max_exceedance_c = 0.0;
};

/// Works at the series' own resolution. Each sample stands for the interval
/// to the next sample of its zone; the last one reuses the previous
/// interval (one hour for a lone sample). Throws InputError when empty.
ComfortStats discomfort_fraction(const IndoorSeries& series, const ComfortZone& zone,
                                 double pressure_pa = kStandardPressurePa);

struct OffsetStats {
  std::size_t samples = 0;
  double mean_c = 0.0;
  double max_c = 0.0;
  double min_c = 0.0;
  double fraction_at_least_1c = 0.0;
  std::vector<double> daily_means_c;  // per local calendar day, in order
};

/// Differences a - b of the comfort temperature, matched sample by sample.
/// Days for the daily means start at local midnight, `utc_offset_hours`
/// ahead of UTC. Throws InputError when the series are empty or their
/// timestamps differ.
OffsetStats paired_offset(const IndoorSeries& a, const IndoorSeries& b, double utc_offset_hours = 0.0);

/// Plot data: one `point` row per sample then one `polygon` row per vertex.
/// Column order is fixed; see docs/formats.md.
void psychro_scatter_export(const IndoorSeries& series, const ComfortZone& zone, std::ostream& out,
                            double pressure_pa = kStandardPressurePa);

inline constexpr const char* kScatterHeader =
    "kind,index,timestamp,zone_id,temperature_c,humidity_ratio_g_kg,air_speed_m_s,inside";

}  // namespace ecodom
