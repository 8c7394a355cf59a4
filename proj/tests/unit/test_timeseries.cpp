#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "ecodom/solar.hpp"
#include "ecodom/timeseries.hpp"
#include "oracles.hpp"

using namespace ecodom;
namespace t = ecodom::testing;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

std::string join(const std::vector<std::string>& ls) {
  std::string s;
  for (const auto& l : ls) s += l + "\n";
  return s;
}

WeatherSeries parse(const std::string& text) {
  std::istringstream in(text);
  return parse_weather(in, "mem");
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Weather, CleanFixtureHas168HoursAndNoGaps) {
  const auto w = load_weather(t::fixture("weather_reunion_7day.csv"));
  EXPECT_EQ(w.size(), 168u);
  EXPECT_TRUE(w.missing_hours.empty());
}

TEST(Weather, OutOfRangeHumidityReportsItsLine) {
  auto ls = lines_of(t::slurp(t::fixture("weather_reunion_7day.csv")));
  // Find the tenth data row and replace its humidity.
  std::size_t data_seen = 0, target = 0;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i].empty() || ls[i][0] == '#' || ls[i].rfind("timestamp", 0) == 0) continue;
    if (++data_seen == 10) {
      target = i;
      break;
    }
  }
  auto cells = ls[target];
  const auto c1 = cells.find(',', cells.find(',') + 1);
  const auto c2 = cells.find(',', c1 + 1);
  ls[target] = cells.substr(0, c1 + 1) + "130" + cells.substr(c2);
  EXPECT_EQ(error_line(join(ls)), target + 1);
  try {
    parse(join(ls));
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("relative_humidity_pct"), std::string::npos) << e.what();
  }
}

TEST(Weather, MalformedInputs) {
  const std::string h = std::string(kWeatherHeader) + "\n";
  EXPECT_EQ(error_line("timestamp,temp\n"), 1u);
  EXPECT_EQ(error_line(h + "2024-01-01T00:00:00Z,25,70,0,0,3\n"), 2u);             // missing column
  EXPECT_EQ(error_line(h + "2024-01-01T00:00:00Z,25,70,0,0,3,x\n"), 2u);           // bad number
  EXPECT_EQ(error_line(h + "2024-01-01T00:30:00Z,25,70,0,0,3,90\n"), 2u);          // off the hourly grid
  EXPECT_EQ(error_line(h + "2024-01-01T01:00:00Z,25,70,0,0,3,90\n"
                           "2024-01-01T00:00:00Z,25,70,0,0,3,90\n"), 3u);          // not increasing
  EXPECT_EQ(error_line(h + "2024-01-01T00:00:00Z,25,70,0,0,3,360\n"), 2u);         // direction range
  EXPECT_EQ(error_line(h + "2024-01-01T00:00:00Z,25,70,1600,0,3,90\n"), 2u);       // irradiance range
  EXPECT_THROW(load_weather(t::fixture("missing.csv")), InputError);
}

TEST(Weather, DeletingInteriorHoursYieldsThatManyGaps) {
  const auto full = load_weather(t::fixture("weather_reunion_7day.csv"));
  for (std::size_t k : {1u, 3u, 17u}) {
    auto w = full;
    std::vector<Timestamp> removed;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t idx = 5 + i * 7;
      removed.push_back(full.records[idx].time);
    }
    std::erase_if(w.records, [&](const WeatherRecord& r) {
      return std::find(removed.begin(), removed.end(), r.time) != removed.end();
    });
    std::ostringstream out;
    write_weather(w, out);
    const auto back = parse(out.str());
    EXPECT_EQ(back.missing_hours, removed);
    EXPECT_EQ(find_missing_hours(w.records).size(), k);
  }
}

TEST(Weather, WriteThenReadReproducesSeries) {
  auto w = synthetic_weather({});
  w.records[3].temperature_c = 0.1 + 0.2;  // not representable in short decimal
  std::ostringstream out;
  write_weather(w, out);
  const auto back = parse(out.str());
  EXPECT_EQ(back.records, w.records);
}

TEST(Indoor, ParseOptionalCellsAndZones) {
  const auto s = load_indoor(t::fixture("indoor_two_zones_30min.csv"));
  const auto ids = s.zone_ids();
  ASSERT_EQ(ids.size(), 2u);
  EXPECT_EQ(s.zone(ids[0]).records.size(), 96u);
  for (const auto& r : s.records) EXPECT_TRUE(r.resultant_temperature_c.has_value());
  const auto m = load_indoor(t::fixture("indoor_90_10.csv"));
  EXPECT_FALSE(m.records[0].resultant_temperature_c.has_value());
  EXPECT_EQ(m.records[0].comfort_temperature_c(), 26.0);
}

TEST(Indoor, WriteThenReadReproducesSeries) {
  const auto s = load_indoor(t::fixture("indoor_two_zones_30min.csv"));
  std::ostringstream out;
  write_indoor(s, out);
  std::istringstream in(out.str());
  const auto back = parse_indoor(in, "mem");
  ASSERT_EQ(back.records.size(), s.records.size());
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    EXPECT_EQ(back.records[i].time, s.records[i].time);
    EXPECT_EQ(back.records[i].zone_id, s.records[i].zone_id);
    EXPECT_EQ(back.records[i].air_temperature_c, s.records[i].air_temperature_c);
    EXPECT_EQ(back.records[i].resultant_temperature_c, s.records[i].resultant_temperature_c);
    EXPECT_EQ(back.records[i].relative_humidity_pct, s.records[i].relative_humidity_pct);
    EXPECT_EQ(back.records[i].air_speed_m_s, s.records[i].air_speed_m_s);
  }
}

TEST(Indoor, PerZoneOrderIsEnforced) {
  std::istringstream in(std::string(kIndoorHeader) +
                        "\n2024-01-01T01:00:00Z,a,26,,60,\n2024-01-01T00:00:00Z,b,26,,60,\n"
                        "2024-01-01T00:30:00Z,a,26,,60,\n");
  try {
    parse_indoor(in, "mem");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Indoor, ResampleToHourlyMeans) {
  const auto s = load_indoor(t::fixture("indoor_two_zones_30min.csv"));
  const auto h = resample_hourly(s);
  // Hand-computed means of each pair of half-hour readings.
  std::map<std::pair<std::string, std::int64_t>, std::vector<const IndoorRecord*>> groups;
  for (const auto& r : s.records) {
    const auto hour = std::chrono::floor<std::chrono::hours>(r.time).time_since_epoch().count();
    groups[{r.zone_id, hour}].push_back(&r);
  }
  ASSERT_EQ(h.records.size(), groups.size());
  for (const auto& r : h.records) {
    const auto hour = std::chrono::floor<std::chrono::hours>(r.time).time_since_epoch().count();
    const auto& g = groups.at({r.zone_id, hour});
    EXPECT_EQ(r.samples, static_cast<int>(g.size()));
    EXPECT_GE(r.samples, 1);
    double air = 0.0, res = 0.0;
    for (const auto* x : g) {
      air += x->air_temperature_c;
      res += *x->resultant_temperature_c;
    }
    EXPECT_NEAR(r.air_temperature_c, air / g.size(), 1e-12);
    EXPECT_NEAR(*r.resultant_temperature_c, res / g.size(), 1e-12);
  }
}

TEST(Synthetic, PeakAndNightSolar) {
  SyntheticWeatherParams p;
  p.days = 1;
  p.t_min_c = 24.0;
  p.t_max_c = 31.0;
  const auto w = synthetic_weather(p);
  ASSERT_EQ(w.size(), 24u);
  double tmax = -100.0, tmin = 100.0;
  for (const auto& r : w.records) {
    tmax = std::max(tmax, r.temperature_c);
    tmin = std::min(tmin, r.temperature_c);
    const auto sun = solar_position(p.latitude_deg, p.longitude_deg, r.time);
    if (sun.altitude_deg <= 0.0) {
      EXPECT_EQ(r.direct_normal_w_m2, 0.0);
      EXPECT_EQ(r.diffuse_horizontal_w_m2, 0.0);
    }
  }
  EXPECT_NEAR(tmax, 31.0, 0.01);
  EXPECT_NEAR(tmin, 24.0, 0.01);
}

TEST(Synthetic, DeterministicBytesAndNightWind) {
  SyntheticWeatherParams p;
  p.night_wind_speed_m_s = 0.3;
  std::ostringstream a, b;
  write_weather(synthetic_weather(p), a);
  write_weather(synthetic_weather(p), b);
  EXPECT_EQ(a.str(), b.str());
  const auto w = synthetic_weather(p);
  // 00:00 local is 20:00 UTC; 12:00 local is 08:00 UTC.
  EXPECT_EQ(w.records.front().wind_speed_m_s, 0.3);
  EXPECT_EQ(w.records[12].wind_speed_m_s, 3.0);
  p.days = 0;
  EXPECT_THROW(synthetic_weather(p), std::invalid_argument);
}
