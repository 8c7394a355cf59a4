#include "ecodom/comfort.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "ecodom/error.hpp"

namespace ecodom {

namespace {

using Interval = std::pair<double, double>;

double cross(const ZoneVertex& o, const ZoneVertex& a, const ZoneVertex& b) {
  return (a.temperature_c - o.temperature_c) * (b.humidity_ratio_g_kg - o.humidity_ratio_g_kg) -
         (a.humidity_ratio_g_kg - o.humidity_ratio_g_kg) * (b.temperature_c - o.temperature_c);
}

bool on_segment(const ZoneVertex& p, const ZoneVertex& a, const ZoneVertex& b) {
  return std::min(a.temperature_c, b.temperature_c) <= p.temperature_c &&
         p.temperature_c <= std::max(a.temperature_c, b.temperature_c) &&
         std::min(a.humidity_ratio_g_kg, b.humidity_ratio_g_kg) <= p.humidity_ratio_g_kg &&
         p.humidity_ratio_g_kg <= std::max(a.humidity_ratio_g_kg, b.humidity_ratio_g_kg);
}

bool segments_intersect(const ZoneVertex& p1, const ZoneVertex& p2, const ZoneVertex& q1, const ZoneVertex& q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(p1, q1, q2)) return true;
  if (d2 == 0 && on_segment(p2, q1, q2)) return true;
  if (d3 == 0 && on_segment(q1, p1, p2)) return true;
  if (d4 == 0 && on_segment(q2, p1, p2)) return true;
  return false;
}

std::vector<Interval> merge(std::vector<Interval> v) {
  std::sort(v.begin(), v.end());
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!out.empty() && iv.first <= out.back().second) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

double distance_to(const std::vector<Interval>& slice, double t) {
  double best = INFINITY;
  for (const auto& [lo, hi] : slice) {
    if (t >= lo && t <= hi) return 0.0;
    best = std::min(best, t < lo ? lo - t : t - hi);
  }
  return best;
}

}  // namespace

PsychroPoint psychro_point(const IndoorRecord& r, double pressure_pa) {
  PsychroPoint p;
  p.temperature_c = r.comfort_temperature_c();
  p.humidity_ratio_g_kg = humidity_ratio(r.air_temperature_c, r.relative_humidity_pct, pressure_pa);
  p.air_speed_m_s = r.air_speed_m_s.value_or(0.0);
  return p;
}

ComfortZone ComfortZone::default_zone() {
  return ComfortZone({{22.0, 4.0}, {29.0, 4.0}, {29.0, 17.0}, {22.0, 17.0}}, 2.0, 32.0);
}

ComfortZone::ComfortZone(std::vector<ZoneVertex> polygon, double extension_c_per_m_s, double max_temperature_c)
    : polygon_(std::move(polygon)), extension_(extension_c_per_m_s), max_t_(max_temperature_c) {
  const std::size_t n = polygon_.size();
  if (n < 3) throw std::invalid_argument("comfort zone polygon needs at least 3 vertices");
  for (const auto& v : polygon_) {
    if (!std::isfinite(v.temperature_c) || !std::isfinite(v.humidity_ratio_g_kg)) {
      throw std::invalid_argument("comfort zone vertex is not finite");
    }
  }
  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = polygon_[i];
    const auto& b = polygon_[(i + 1) % n];
    area2 += a.temperature_c * b.humidity_ratio_g_kg - b.temperature_c * a.humidity_ratio_g_kg;
  }
  if (std::abs(area2) < 1e-12) throw std::invalid_argument("comfort zone polygon has zero area");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(polygon_[i], polygon_[(i + 1) % n], polygon_[j], polygon_[(j + 1) % n])) {
        throw std::invalid_argument(fmt::format("comfort zone polygon self-intersects (edges {} and {})", i, j));
      }
    }
  }
  if (!(extension_ >= 0.0) || !std::isfinite(extension_)) {
    throw std::invalid_argument("air-speed extension must be >= 0");
  }
  if (!std::isfinite(max_t_)) throw std::invalid_argument("maximum temperature must be finite");
}

ComfortZone ComfortZone::from_json(const nlohmann::json& doc, const std::string& source) {
  auto fail = [&](const std::string& what) { return InputError(fmt::format("{}: {}", source, what)); };
  if (!doc.is_object()) throw fail("comfort zone must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "format" && key != "format_version" && key != "polygon" && key != "air_speed_extension_c_per_m_s" &&
        key != "max_temperature_c") {
      throw fail(fmt::format("unknown key '{}'", key));
    }
  }
  if (doc.value("format", std::string{}) != "ecodom-comfort-zone") throw fail("format must be 'ecodom-comfort-zone'");
  if (!doc.contains("format_version") || doc["format_version"] != 1) throw fail("unsupported format_version");
  if (!doc.contains("polygon") || !doc["polygon"].is_array()) throw fail("'polygon' must be an array");
  std::vector<ZoneVertex> poly;
  for (std::size_t i = 0; i < doc["polygon"].size(); ++i) {
    const auto& v = doc["polygon"][i];
    if (!v.is_object() || v.size() != 2 || !v.contains("temperature_c") || !v.contains("humidity_ratio_g_kg") ||
        !v["temperature_c"].is_number() || !v["humidity_ratio_g_kg"].is_number()) {
      throw fail(fmt::format("polygon[{}] must be {{\"temperature_c\": number, \"humidity_ratio_g_kg\": number}}", i));
    }
    poly.push_back({v["temperature_c"].get<double>(), v["humidity_ratio_g_kg"].get<double>()});
  }
  auto number = [&](const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number()) throw fail(fmt::format("'{}' must be a number", key));
    return doc[key].get<double>();
  };
  try {
    return ComfortZone(std::move(poly), number("air_speed_extension_c_per_m_s", 2.0),
                       number("max_temperature_c", 32.0));
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
}

ComfortZone ComfortZone::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open comfort zone file '{}'", path.string()));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return from_json(doc, path.string());
}

nlohmann::ordered_json ComfortZone::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "ecodom-comfort-zone";
  j["format_version"] = 1;
  j["polygon"] = nlohmann::ordered_json::array();
  for (const auto& v : polygon_) {
    j["polygon"].push_back({{"temperature_c", v.temperature_c}, {"humidity_ratio_g_kg", v.humidity_ratio_g_kg}});
  }
  j["air_speed_extension_c_per_m_s"] = extension_;
  j["max_temperature_c"] = max_t_;
  return j;
}

double ComfortZone::min_humidity_ratio() const {
  return std::min_element(polygon_.begin(), polygon_.end(), [](const auto& a, const auto& b) {
           return a.humidity_ratio_g_kg < b.humidity_ratio_g_kg;
         })->humidity_ratio_g_kg;
}

double ComfortZone::max_humidity_ratio() const {
  return std::max_element(polygon_.begin(), polygon_.end(), [](const auto& a, const auto& b) {
           return a.humidity_ratio_g_kg < b.humidity_ratio_g_kg;
         })->humidity_ratio_g_kg;
}

std::vector<std::pair<double, double>> ComfortZone::slice(double w, double air_speed) const {
  std::vector<Interval> parts;
  std::vector<double> crossings;
  const std::size_t n = polygon_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = polygon_[i];
    const auto& b = polygon_[(i + 1) % n];
    if (a.humidity_ratio_g_kg == w) parts.emplace_back(a.temperature_c, a.temperature_c);
    if (a.humidity_ratio_g_kg == w && b.humidity_ratio_g_kg == w) {
      parts.emplace_back(std::min(a.temperature_c, b.temperature_c), std::max(a.temperature_c, b.temperature_c));
      continue;
    }
    const bool up = a.humidity_ratio_g_kg <= w && w < b.humidity_ratio_g_kg;
    const bool down = b.humidity_ratio_g_kg <= w && w < a.humidity_ratio_g_kg;
    if (up || down) {
      const double f = (w - a.humidity_ratio_g_kg) / (b.humidity_ratio_g_kg - a.humidity_ratio_g_kg);
      crossings.push_back(a.temperature_c + f * (b.temperature_c - a.temperature_c));
    }
  }
  std::sort(crossings.begin(), crossings.end());
  for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) parts.emplace_back(crossings[i], crossings[i + 1]);
  parts = merge(std::move(parts));

  const double push = extension_ * std::max(0.0, air_speed);
  if (push > 0.0) {
    for (auto& [lo, hi] : parts) hi = std::max(hi, std::min(hi + push, max_t_));
    parts = merge(std::move(parts));
  }
  return parts;
}

bool ComfortZone::contains(const PsychroPoint& p) const {
  return distance_to(slice(p.humidity_ratio_g_kg, p.air_speed_m_s), p.temperature_c) == 0.0;
}

double ComfortZone::exceedance_c(const PsychroPoint& p) const {
  if (contains(p)) return 0.0;
  const double w = std::clamp(p.humidity_ratio_g_kg, min_humidity_ratio(), max_humidity_ratio());
  const double d = distance_to(slice(w, p.air_speed_m_s), p.temperature_c);
  return std::isfinite(d) ? d : 0.0;
}

ComfortClass classify(const PsychroPoint& point, const ComfortZone& zone) {
  return zone.contains(point) ? ComfortClass::Inside : ComfortClass::Outside;
}

ComfortStats discomfort_fraction(const IndoorSeries& series, const ComfortZone& zone, double pressure_pa) {
  if (series.empty()) throw InputError("comfort analysis needs a non-empty indoor series");
  std::map<std::string, std::vector<std::size_t>> by_zone;
  for (std::size_t i = 0; i < series.records.size(); ++i) by_zone[series.records[i].zone_id].push_back(i);

  ComfortStats s;
  double exceed_sum = 0.0;
  for (const auto& [id, idx] : by_zone) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      double dt_h = 1.0;
      if (k + 1 < idx.size()) {
        dt_h = std::chrono::duration<double, std::ratio<3600>>(series.records[idx[k + 1]].time -
                                                               series.records[idx[k]].time).count();
      } else if (k > 0) {
        dt_h = std::chrono::duration<double, std::ratio<3600>>(series.records[idx[k]].time -
                                                               series.records[idx[k - 1]].time).count();
      }
      s.hours += dt_h;
      ++s.samples;
      const auto p = psychro_point(series.records[idx[k]], pressure_pa);
      if (!zone.contains(p)) {
        ++s.outside_samples;
        const double e = zone.exceedance_c(p);
        exceed_sum += e;
        s.max_exceedance_c = std::max(s.max_exceedance_c, e);
      }
    }
  }
  s.discomfort_fraction = static_cast<double>(s.outside_samples) / static_cast<double>(s.samples);
  if (s.outside_samples > 0) s.mean_exceedance_c = exceed_sum / static_cast<double>(s.outside_samples);
  return s;
}

OffsetStats paired_offset(const IndoorSeries& a, const IndoorSeries& b, double utc_offset_hours) {
  if (a.empty() || b.empty()) throw InputError("paired offset needs two non-empty series");
  if (a.records.size() != b.records.size()) {
    throw InputError(fmt::format("paired series differ in length ({} vs {})", a.records.size(), b.records.size()));
  }
  OffsetStats s;
  s.samples = a.records.size();
  s.max_c = -INFINITY;
  s.min_c = INFINITY;
  double sum = 0.0;
  std::size_t at_least_1 = 0;
  const auto shift = std::chrono::seconds{std::llround(utc_offset_hours * 3600.0)};
  std::map<std::chrono::sys_days, std::pair<double, std::size_t>> days;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& ra = a.records[i];
    const auto& rb = b.records[i];
    if (ra.time != rb.time) {
      throw InputError(fmt::format("paired series timestamps differ at sample {}: {} vs {}", i,
                                   format_timestamp(ra.time), format_timestamp(rb.time)));
    }
    const double d = ra.comfort_temperature_c() - rb.comfort_temperature_c();
    sum += d;
    s.max_c = std::max(s.max_c, d);
    s.min_c = std::min(s.min_c, d);
    if (d >= 1.0) ++at_least_1;
    auto& day = days[std::chrono::floor<std::chrono::days>(ra.time + shift)];
    day.first += d;
    ++day.second;
  }
  s.mean_c = sum / static_cast<double>(s.samples);
  s.fraction_at_least_1c = static_cast<double>(at_least_1) / static_cast<double>(s.samples);
  for (const auto& [_, acc] : days) s.daily_means_c.push_back(acc.first / static_cast<double>(acc.second));
  return s;
}

void psychro_scatter_export(const IndoorSeries& series, const ComfortZone& zone, std::ostream& out,
                            double pressure_pa) {
  out << kScatterHeader << '\n';
  for (std::size_t i = 0; i < series.records.size(); ++i) {
    const auto& r = series.records[i];
    const auto p = psychro_point(r, pressure_pa);
    out << "point," << i << ',' << format_timestamp(r.time) << ',' << r.zone_id << ','
        << format_number(p.temperature_c) << ',' << format_number(p.humidity_ratio_g_kg) << ','
        << format_number(p.air_speed_m_s) << ',' << (zone.contains(p) ? 1 : 0) << '\n';
  }
  for (std::size_t i = 0; i < zone.polygon().size(); ++i) {
    const auto& v = zone.polygon()[i];
    out << "polygon," << i << ",,," << format_number(v.temperature_c) << ','
        << format_number(v.humidity_ratio_g_kg) << ",,\n";
  }
}

}  // namespace ecodom
