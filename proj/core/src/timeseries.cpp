#include "ecodom/timeseries.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

#include "ecodom/error.hpp"
#include "ecodom/solar.hpp"

namespace ecodom {

namespace {

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string expected_header(const char* header, char delim) {
  std::string h(header);
  if (delim != ',') {
    for (auto& c : h) {
      if (c == ',') c = delim;
    }
  }
  return h;
}

// Iterates data rows, skipping blanks and comments, checking the header.
template <typename Row>
void for_each_row(std::istream& in, const std::string& source, const CsvFormat& fmt_, const char* header,
                  Row&& row) {
  std::string line;
  std::size_t lineno = 0;
  bool seen_header = false;
  const std::string want = expected_header(header, fmt_.delimiter);
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == fmt_.comment) continue;
    if (!seen_header) {
      if (t != want) throw ParseError(source, lineno, fmt::format("expected header '{}'", want));
      seen_header = true;
      continue;
    }
    row(split(t, fmt_.delimiter), lineno);
  }
  if (!seen_header) throw ParseError(source, lineno, "missing header");
}

double to_double(std::string_view s, const std::string& source, std::size_t line, const char* column) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(source, line, fmt::format("column '{}': not a number: '{}'", column, s));
  }
  return v;
}

std::optional<double> to_optional(std::string_view s, const std::string& source, std::size_t line,
                                  const char* column) {
  if (trim(s).empty()) return std::nullopt;
  return to_double(s, source, line, column);
}

Timestamp to_time(std::string_view s, const std::string& source, std::size_t line) {
  auto t = parse_timestamp(trim(s));
  if (!t) throw ParseError(source, line, fmt::format("bad ISO-8601 timestamp '{}'", s));
  return *t;
}

void check_range(double v, double lo, double hi, const std::string& source, std::size_t line, const char* column) {
  if (v < lo || v > hi) {
    throw ParseError(source, line, fmt::format("column '{}': {} outside [{}, {}]", column, v, lo, hi));
  }
}

std::ifstream open(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open {} file '{}'", what, path.string()));
  return in;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------- weather

std::vector<Timestamp> find_missing_hours(const std::vector<WeatherRecord>& records) {
  std::vector<Timestamp> missing;
  for (std::size_t i = 1; i < records.size(); ++i) {
    for (auto t = records[i - 1].time + std::chrono::hours{1}; t < records[i].time; t += std::chrono::hours{1}) {
      missing.push_back(t);
    }
  }
  return missing;
}

WeatherSeries parse_weather(std::istream& in, const std::string& source, const CsvFormat& format) {
  WeatherSeries series;
  for_each_row(in, source, format, kWeatherHeader, [&](const std::vector<std::string_view>& cells, std::size_t line) {
    if (cells.size() != 7) {
      throw ParseError(source, line, fmt::format("expected 7 columns, found {}", cells.size()));
    }
    WeatherRecord r;
    r.time = to_time(cells[0], source, line);
    r.temperature_c = to_double(cells[1], source, line, "temperature_c");
    r.relative_humidity_pct = to_double(cells[2], source, line, "relative_humidity_pct");
    r.direct_normal_w_m2 = to_double(cells[3], source, line, "direct_normal_w_m2");
    r.diffuse_horizontal_w_m2 = to_double(cells[4], source, line, "diffuse_horizontal_w_m2");
    r.wind_speed_m_s = to_double(cells[5], source, line, "wind_speed_m_s");
    r.wind_direction_deg = to_double(cells[6], source, line, "wind_direction_deg");
    check_range(r.temperature_c, -60.0, 70.0, source, line, "temperature_c");
    check_range(r.relative_humidity_pct, 0.0, 100.0, source, line, "relative_humidity_pct");
    check_range(r.direct_normal_w_m2, 0.0, 1500.0, source, line, "direct_normal_w_m2");
    check_range(r.diffuse_horizontal_w_m2, 0.0, 1500.0, source, line, "diffuse_horizontal_w_m2");
    check_range(r.wind_speed_m_s, 0.0, 100.0, source, line, "wind_speed_m_s");
    if (r.wind_direction_deg < 0.0 || r.wind_direction_deg >= 360.0) {
      throw ParseError(source, line, fmt::format("column 'wind_direction_deg': {} outside [0, 360)", r.wind_direction_deg));
    }
    if (r.time.time_since_epoch() % std::chrono::hours{1} != std::chrono::seconds{0}) {
      throw ParseError(source, line, "weather timestamps must fall on whole hours");
    }
    if (!series.records.empty() && r.time <= series.records.back().time) {
      throw ParseError(source, line, "timestamps must be strictly increasing");
    }
    series.records.push_back(r);
  });
  series.missing_hours = find_missing_hours(series.records);
  return series;
}

WeatherSeries load_weather(const std::filesystem::path& path, const CsvFormat& format) {
  auto in = open(path, "weather");
  return parse_weather(in, path.string(), format);
}

void write_weather(const WeatherSeries& series, std::ostream& out) {
  out << kWeatherHeader << '\n';
  for (const auto& r : series.records) {
    out << format_timestamp(r.time) << ',' << format_number(r.temperature_c) << ','
        << format_number(r.relative_humidity_pct) << ',' << format_number(r.direct_normal_w_m2) << ','
        << format_number(r.diffuse_horizontal_w_m2) << ',' << format_number(r.wind_speed_m_s) << ','
        << format_number(r.wind_direction_deg) << '\n';
  }
}

// ----------------------------------------------------------------- indoor

std::vector<std::string> IndoorSeries::zone_ids() const {
  std::vector<std::string> ids;
  for (const auto& r : records) {
    if (std::find(ids.begin(), ids.end(), r.zone_id) == ids.end()) ids.push_back(r.zone_id);
  }
  return ids;
}

IndoorSeries IndoorSeries::zone(const std::string& id) const {
  IndoorSeries out;
  for (const auto& r : records) {
    if (r.zone_id == id) out.records.push_back(r);
  }
  return out;
}

IndoorSeries parse_indoor(std::istream& in, const std::string& source, const CsvFormat& format) {
  IndoorSeries series;
  std::map<std::string, Timestamp> last;
  for_each_row(in, source, format, kIndoorHeader, [&](const std::vector<std::string_view>& cells, std::size_t line) {
    if (cells.size() != 6) {
      throw ParseError(source, line, fmt::format("expected 6 columns, found {}", cells.size()));
    }
    IndoorRecord r;
    r.time = to_time(cells[0], source, line);
    r.zone_id = std::string(trim(cells[1]));
    if (r.zone_id.empty()) throw ParseError(source, line, "empty zone_id");
    r.air_temperature_c = to_double(cells[2], source, line, "air_temperature_c");
    r.resultant_temperature_c = to_optional(cells[3], source, line, "resultant_temperature_c");
    r.relative_humidity_pct = to_double(cells[4], source, line, "relative_humidity_pct");
    r.air_speed_m_s = to_optional(cells[5], source, line, "air_speed_m_s");
    check_range(r.air_temperature_c, -30.0, 70.0, source, line, "air_temperature_c");
    if (r.resultant_temperature_c) {
      check_range(*r.resultant_temperature_c, -30.0, 70.0, source, line, "resultant_temperature_c");
    }
    check_range(r.relative_humidity_pct, 0.0, 100.0, source, line, "relative_humidity_pct");
    if (r.air_speed_m_s) check_range(*r.air_speed_m_s, 0.0, 50.0, source, line, "air_speed_m_s");
    auto it = last.find(r.zone_id);
    if (it != last.end() && r.time <= it->second) {
      throw ParseError(source, line, fmt::format("zone '{}': timestamps must be strictly increasing", r.zone_id));
    }
    last[r.zone_id] = r.time;
    series.records.push_back(std::move(r));
  });
  return series;
}

IndoorSeries load_indoor(const std::filesystem::path& path, const CsvFormat& format) {
  auto in = open(path, "indoor");
  return parse_indoor(in, path.string(), format);
}

void write_indoor(const IndoorSeries& series, std::ostream& out) {
  out << kIndoorHeader << '\n';
  for (const auto& r : series.records) {
    out << format_timestamp(r.time) << ',' << r.zone_id << ',' << format_number(r.air_temperature_c) << ','
        << (r.resultant_temperature_c ? format_number(*r.resultant_temperature_c) : "") << ','
        << format_number(r.relative_humidity_pct) << ','
        << (r.air_speed_m_s ? format_number(*r.air_speed_m_s) : "") << '\n';
  }
}

IndoorSeries resample_hourly(const IndoorSeries& series) {
  struct Acc {
    int n = 0;
    double air = 0.0, rh = 0.0, res = 0.0, speed = 0.0;
    int n_res = 0, n_speed = 0;
  };
  IndoorSeries out;
  for (const auto& zone_id : series.zone_ids()) {
    std::map<Timestamp, Acc> buckets;
    for (const auto& r : series.records) {
      if (r.zone_id != zone_id) continue;
      auto& a = buckets[std::chrono::floor<std::chrono::hours>(r.time)];
      ++a.n;
      a.air += r.air_temperature_c;
      a.rh += r.relative_humidity_pct;
      if (r.resultant_temperature_c) {
        a.res += *r.resultant_temperature_c;
        ++a.n_res;
      }
      if (r.air_speed_m_s) {
        a.speed += *r.air_speed_m_s;
        ++a.n_speed;
      }
    }
    for (const auto& [t, a] : buckets) {
      IndoorRecord r;
      r.time = t;
      r.zone_id = zone_id;
      r.air_temperature_c = a.air / a.n;
      r.relative_humidity_pct = a.rh / a.n;
      if (a.n_res > 0) r.resultant_temperature_c = a.res / a.n_res;
      if (a.n_speed > 0) r.air_speed_m_s = a.speed / a.n_speed;
      r.samples = a.n;
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

// -------------------------------------------------------------- synthetic

WeatherSeries synthetic_weather(const SyntheticWeatherParams& p) {
  using namespace std::chrono;
  if (p.days < 1) throw std::invalid_argument("synthetic weather needs at least one day");
  const auto offset = seconds{static_cast<long long>(std::llround(p.utc_offset_hours * 3600.0))};
  const Timestamp start = sys_days{p.start_date} - offset;
  const double mid_t = (p.t_max_c + p.t_min_c) / 2.0;
  const double amp_t = (p.t_max_c - p.t_min_c) / 2.0;
  const double mid_rh = (p.rh_max_pct + p.rh_min_pct) / 2.0;
  const double amp_rh = (p.rh_max_pct - p.rh_min_pct) / 2.0;

  WeatherSeries series;
  series.records.reserve(static_cast<std::size_t>(p.days) * 24);
  for (int h = 0; h < p.days * 24; ++h) {
    WeatherRecord r;
    r.time = start + hours{h};
    const int local_hour = h % 24;
    const double phase = 2.0 * std::numbers::pi * (local_hour - p.peak_hour_local) / 24.0;
    r.temperature_c = mid_t + amp_t * std::cos(phase);
    r.relative_humidity_pct = mid_rh - amp_rh * std::cos(phase);
    const auto sun = solar_position(p.latitude_deg, p.longitude_deg, r.time);
    if (sun.altitude_deg > 0.0) {
      const double sin_alt = std::sin(sun.altitude_deg * std::numbers::pi / 180.0);
      r.direct_normal_w_m2 = p.clear_sky_a_w_m2 * std::exp(-p.clear_sky_b / sin_alt);
      r.diffuse_horizontal_w_m2 = p.clear_sky_c * r.direct_normal_w_m2;
    }
    const bool night = local_hour >= 19 || local_hour < 7;
    r.wind_speed_m_s = (night && p.night_wind_speed_m_s) ? *p.night_wind_speed_m_s : p.wind_speed_m_s;
    r.wind_direction_deg = p.wind_direction_deg;
    series.records.push_back(r);
  }
  return series;
}

}  // namespace ecodom
