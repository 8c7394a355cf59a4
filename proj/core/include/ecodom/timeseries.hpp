#pragma once

// Weather and indoor monitoring series. Both are CSV with a fixed header,
// ISO-8601 timestamps and `#` comment lines; see docs/formats.md.

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ecodom/timestamp.hpp"

namespace ecodom {

struct CsvFormat {
  char delimiter = ',';
  char comment = '#';
};

struct WeatherRecord {
  Timestamp time;
  double temperature_c = 0.0;
  double relative_humidity_pct = 0.0;
  double direct_normal_w_m2 = 0.0;
  double diffuse_horizontal_w_m2 = 0.0;
  double wind_speed_m_s = 0.0;
  double wind_direction_deg = 0.0;  // direction the wind blows from

  bool operator==(const WeatherRecord&) const = default;
};

struct WeatherSeries {
  std::vector<WeatherRecord> records;
  // Hours absent between the first and last record, in order.
  std::vector<Timestamp> missing_hours;

  std::size_t size() const { return records.size(); }
};

inline constexpr const char* kWeatherHeader =
    "timestamp,temperature_c,relative_humidity_pct,direct_normal_w_m2,diffuse_horizontal_w_m2,wind_speed_m_s,"
    "wind_direction_deg";

/// Hourly series. Errors (ParseError with line number): malformed rows,
/// timestamps not strictly increasing or off the hourly grid, values out of
/// physical range. Gaps are reported, not rejected.
WeatherSeries parse_weather(std::istream& in, const std::string& source, const CsvFormat& format = {});
WeatherSeries load_weather(const std::filesystem::path& path, const CsvFormat& format = {});
void write_weather(const WeatherSeries& series, std::ostream& out);

/// Hours missing between consecutive records of an hourly series.
std::vector<Timestamp> find_missing_hours(const std::vector<WeatherRecord>& records);

struct IndoorRecord {
  Timestamp time;
  std::string zone_id;
  double air_temperature_c = 0.0;
  std::optional<double> resultant_temperature_c;
  double relative_humidity_pct = 0.0;
  std::optional<double> air_speed_m_s;
  int samples = 1;  // raw readings behind this record (after resampling)

  /// Resultant temperature when measured, else air temperature.
  double comfort_temperature_c() const { return resultant_temperature_c.value_or(air_temperature_c); }
};

struct IndoorSeries {
  std::vector<IndoorRecord> records;

  std::vector<std::string> zone_ids() const;  // first-appearance order
  IndoorSeries zone(const std::string& id) const;
  bool empty() const { return records.empty(); }
};

inline constexpr const char* kIndoorHeader =
    "timestamp,zone_id,air_temperature_c,resultant_temperature_c,relative_humidity_pct,air_speed_m_s";

/// Any sub-hourly or hourly resolution; timestamps strictly increasing per zone.
IndoorSeries parse_indoor(std::istream& in, const std::string& source, const CsvFormat& format = {});
IndoorSeries load_indoor(const std::filesystem::path& path, const CsvFormat& format = {});
void write_indoor(const IndoorSeries& series, std::ostream& out);

/// Hourly means per zone, stamped at the start of each hour. Optional
/// fields average over the readings that carry them.
IndoorSeries resample_hourly(const IndoorSeries& series);

/// Deterministic clear-sky diurnal weather for a hot-season archetype.
struct SyntheticWeatherParams {
  std::chrono::year_month_day start_date{std::chrono::year{2024}, std::chrono::January, std::chrono::day{15}};
  int days = 7;
  double utc_offset_hours = 4.0;  // local standard time of the site
  double latitude_deg = -21.1;
  double longitude_deg = 55.5;
  double t_min_c = 24.0;
  double t_max_c = 31.0;
  int peak_hour_local = 14;
  double rh_min_pct = 60.0;  // reached at the temperature peak
  double rh_max_pct = 85.0;
  double wind_speed_m_s = 3.0;
  std::optional<double> night_wind_speed_m_s;  // 19:00-06:59 local when set
  double wind_direction_deg = 110.0;
  // Clear-sky model: DNI = a exp(-b / sin(alt)), DHI = c DNI.
  double clear_sky_a_w_m2 = 1100.0;
  double clear_sky_b = 0.18;
  double clear_sky_c = 0.13;
};

WeatherSeries synthetic_weather(const SyntheticWeatherParams& params);

/// Shortest representation that parses back to the same double.
std::string format_number(double v);

}  // namespace ecodom
