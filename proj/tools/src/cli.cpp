#include "ecodom/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "ecodom/building_io.hpp"
#include "ecodom/catalogue.hpp"
#include "ecodom/comfort.hpp"
#include "ecodom/error.hpp"
#include "ecodom/report.hpp"
#include "ecodom/rules.hpp"
#include "ecodom/thermal.hpp"
#include "ecodom/timeseries.hpp"

namespace ecodom::cli {

namespace {

struct CheckArgs {
  std::string building;
  std::string catalogue;
  std::string si_rule = "min";
  std::string format = "text";
  std::string out;
};

struct SimulateArgs {
  std::string building;
  std::string weather;
  std::string scenario;
  std::string paired;
  std::string out;
};

struct ComfortArgs {
  std::string indoor;
  std::string zone;
  std::string out;
  std::vector<std::string> pair;
};

struct WeatherArgs {
  std::string start = "2024-01-15";
  int days = 7;
  double t_min = 24.0;
  double t_max = 31.0;
  double wind = 3.0;
  std::optional<double> night_wind;
  double latitude = -21.1;
  double longitude = 55.5;
  std::string out;
};

struct CatalogueArgs {
  std::string catalogue;
  std::string format = "text";
};

// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::string& text) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(fmt::format("cannot write '{}'", path));
  f << text;
  if (!f) throw InputError(fmt::format("failed writing '{}'", path));
}

RuleCatalogue pick_catalogue(const std::string& flag) {
  if (!flag.empty()) return RuleCatalogue::load(flag);
  if (const char* env = std::getenv(kCatalogueEnv); env && *env) return RuleCatalogue::load(env);
  return RuleCatalogue::builtin();
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const auto catalogue = pick_catalogue(a.catalogue);
  const auto building = load_building(a.building);
  RuleOptions options;
  options.si_rule = *parse_si_rule(a.si_rule);
  const auto report = compliance_report(building, catalogue, options);
  const std::string text = a.format == "json" ? report_to_json(report).dump(2) + "\n" : report_to_text(report);
  emit(a.out, out, text);
  return report.overall == Verdict::Fail ? kExitFail : kExitPass;
}

std::string simulation_summary(const std::string& name, const SimulationResult& r) {
  auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
  auto peak = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  const auto shares = gain_breakdown(r);
  std::string s;
  s += fmt::format("zone: {}\n", name);
  s += fmt::format("hours: {}\n", r.size());
  s += fmt::format("outdoor temperature: mean {:.2f} C, peak {:.2f} C\n", mean(r.outdoor_c), peak(r.outdoor_c));
  s += fmt::format("air temperature: mean {:.2f} C, peak {:.2f} C\n", mean(r.air_c), peak(r.air_c));
  s += fmt::format("resultant temperature: mean {:.2f} C, peak {:.2f} C\n", mean(r.resultant_c),
                   peak(r.resultant_c));
  s += fmt::format("ACH: mean {:.2f}, max {:.2f}\n", mean(r.ach), peak(r.ach));
  s += fmt::format("gain shares: roof {:.3f}, walls {:.3f}, windows {:.3f}\n", shares.roof, shares.walls,
                   shares.windows);
  s += fmt::format("max energy-balance residual: {:.3g}\n", peak(r.max_residual));
  return s;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  Scenario sc;
  if (!a.scenario.empty()) sc = load_scenario(a.scenario);
  const std::filesystem::path building_path =
      a.building.empty() ? sc.building.value_or("") : std::filesystem::path(a.building);
  const std::filesystem::path weather_path =
      a.weather.empty() ? sc.weather.value_or("") : std::filesystem::path(a.weather);
  if (building_path.empty()) throw InputError("no building given (argument or scenario key 'building')");
  if (weather_path.empty()) throw InputError("no weather given (--weather or scenario key 'weather')");

  const auto weather = load_weather(weather_path);
  const auto building = load_building(building_path);
  const auto result = simulate(zone_from_building(building, sc.zone), weather, sc.solver);

  if (!a.out.empty()) {
    std::ostringstream csv;
    write_simulation_csv(result, csv);
    emit(a.out, out, csv.str());
  }

  std::string summary = simulation_summary(building.name, result);
  if (!a.paired.empty()) {
    const auto other = load_building(a.paired);
    const auto other_result = simulate(zone_from_building(other, sc.zone), weather, sc.solver);
    summary += "\n" + simulation_summary(other.name, other_result);
    const auto stats = paired_offset(to_indoor_series(result, weather, building.name),
                                     to_indoor_series(other_result, weather, other.name), sc.zone.utc_offset_hours);
    summary += fmt::format("\npaired offset ({} minus {}), resultant temperature:\n", building.name, other.name);
    summary += fmt::format("  mean {:.2f} C, max {:.2f} C, min {:.2f} C, hours >= 1 C: {:.1f}%\n", stats.mean_c,
                           stats.max_c, stats.min_c, 100.0 * stats.fraction_at_least_1c);
    summary += "  daily means (local days):";
    for (double d : stats.daily_means_c) summary += fmt::format(" {:.2f}", d);
    summary += "\n";
  }
  out << summary;
  return kExitPass;
}

int cmd_comfort(const ComfortArgs& a, std::ostream& out) {
  const auto zone = a.zone.empty() ? ComfortZone::default_zone() : ComfortZone::load(a.zone);
  const auto series = load_indoor(a.indoor);
  if (series.empty()) throw InputError(fmt::format("{}: indoor series is empty", a.indoor));

  std::string s;
  auto describe = [&](const std::string& label, const IndoorSeries& part) {
    const auto st = discomfort_fraction(part, zone);
    s += fmt::format("{}: {} samples, {:.1f} h, discomfort {:.1f}%, mean exceedance {:.2f} C, "
                     "max exceedance {:.2f} C\n",
                     label, st.samples, st.hours, 100.0 * st.discomfort_fraction, st.mean_exceedance_c,
                     st.max_exceedance_c);
  };
  describe("all zones", series);
  const auto ids = series.zone_ids();
  if (ids.size() > 1) {
    for (const auto& id : ids) describe(fmt::format("zone {}", id), series.zone(id));
  }

  std::vector<std::string> pair = a.pair;
  if (pair.empty() && ids.size() == 2) pair = ids;
  if (!pair.empty()) {
    for (const auto& id : pair) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        throw InputError(fmt::format("zone '{}' not present in {}", id, a.indoor));
      }
    }
    const auto st = paired_offset(series.zone(pair[0]), series.zone(pair[1]));
    s += fmt::format("offset {} minus {}: mean {:.2f} C, max {:.2f} C, min {:.2f} C, hours >= 1 C: {:.1f}%\n",
                     pair[0], pair[1], st.mean_c, st.max_c, st.min_c, 100.0 * st.fraction_at_least_1c);
  }
  out << s;

  if (!a.out.empty()) {
    std::ostringstream csv;
    psychro_scatter_export(series, zone, csv);
    emit(a.out, out, csv.str());
  }
  return kExitPass;
}

int cmd_weather(const WeatherArgs& a, std::ostream& out) {
  SyntheticWeatherParams p;
  unsigned y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(a.start.c_str(), "%4u-%2u-%2u%c", &y, &m, &d, &tail) != 3) {
    throw InputError(fmt::format("--start expects YYYY-MM-DD, got '{}'", a.start));
  }
  p.start_date = std::chrono::year_month_day{std::chrono::year{static_cast<int>(y)}, std::chrono::month{m},
                                             std::chrono::day{d}};
  if (!p.start_date.ok()) throw InputError(fmt::format("--start: invalid date '{}'", a.start));
  p.days = a.days;
  p.t_min_c = a.t_min;
  p.t_max_c = a.t_max;
  p.wind_speed_m_s = a.wind;
  p.night_wind_speed_m_s = a.night_wind;
  p.latitude_deg = a.latitude;
  p.longitude_deg = a.longitude;
  std::ostringstream csv;
  write_weather(synthetic_weather(p), csv);
  emit(a.out, out, csv.str());
  return kExitPass;
}

int cmd_catalogue(const CatalogueArgs& a, std::ostream& out) {
  const auto cat = pick_catalogue(a.catalogue);
  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["catalogue_version"] = cat.version();
    j["checksum"] = cat.checksum();
    j["region"] = cat.region();
    out << j.dump(2) << "\n";
  } else {
    out << fmt::format("catalogue {} ({})\nchecksum {}\n", cat.version(), cat.region(), cat.checksum());
  }
  return kExitPass;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks tropical dwelling designs against the ECODOM prescriptions and simulates them.", "ecodom"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ecodom 1.0.0");
  app.footer(fmt::format("Exit codes: 0 pass, 1 compliance failure, 2 usage or input error.\n"
                         "Environment: {} sets the default catalogue file.",
                         kCatalogueEnv));

  const std::vector<std::string> formats{"text", "json"};

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check a building description against the rule catalogue");
  c->add_option("building", check.building, "Building JSON file")->required();
  c->add_option("--catalogue", check.catalogue, "Catalogue JSON file (default: built-in, or $ECODOM_CATALOGUE)");
  c->add_option("--si-rule", check.si_rule, "Internal porosity comparison: Si >= min or max of (So1, So2)")
      ->check(CLI::IsMember({"min", "max"}))
      ->capture_default_str();
  c->add_option("--format", check.format, "Report format")->check(CLI::IsMember(formats))->capture_default_str();
  c->add_option("--out", check.out, "Write the report to this file instead of stdout");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run the single-zone thermal model");
  s->add_option("building", sim.building, "Building JSON file (or scenario key 'building')");
  s->add_option("--weather", sim.weather, "Hourly weather CSV (or scenario key 'weather')");
  s->add_option("--scenario", sim.scenario, "Scenario JSON with zone and solver overrides");
  s->add_option("--paired", sim.paired, "Second building run on the same weather; prints the offset");
  s->add_option("--out", sim.out, "Write the hourly result CSV here");

  ComfortArgs comfort;
  auto* k = app.add_subcommand("comfort", "Comfort statistics of an indoor series");
  k->add_option("indoor", comfort.indoor, "Indoor CSV file")->required();
  k->add_option("--zone", comfort.zone, "Comfort zone JSON overriding the default polygon");
  k->add_option("--out", comfort.out, "Write the psychrometric scatter CSV here");
  k->add_option("--pair", comfort.pair, "Two zone ids whose offset (first minus second) is reported")
      ->expected(2);

  WeatherArgs weather;
  auto* w = app.add_subcommand("weather", "Write a synthetic hot-season weather CSV");
  w->add_option("--start", weather.start, "Local start date YYYY-MM-DD")->capture_default_str();
  w->add_option("--days", weather.days, "Number of days")->check(CLI::Range(1, 3660))->capture_default_str();
  w->add_option("--t-min", weather.t_min, "Daily minimum temperature C")->capture_default_str();
  w->add_option("--t-max", weather.t_max, "Daily maximum temperature C")->capture_default_str();
  w->add_option("--wind", weather.wind, "Wind speed m/s")->capture_default_str();
  w->add_option("--night-wind", weather.night_wind, "Wind speed m/s from 19:00 to 07:00 local");
  w->add_option("--latitude", weather.latitude, "Site latitude")->capture_default_str();
  w->add_option("--longitude", weather.longitude, "Site longitude")->capture_default_str();
  w->add_option("--out", weather.out, "Output file (default stdout)");

  CatalogueArgs cat;
  auto* g = app.add_subcommand("catalogue", "Show the version and checksum of the rule catalogue");
  g->add_option("--catalogue", cat.catalogue, "Catalogue JSON file");
  g->add_option("--format", cat.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*c) return cmd_check(check, out);
    if (*s) return cmd_simulate(sim, out);
    if (*k) return cmd_comfort(comfort, out);
    if (*w) return cmd_weather(weather, out);
    if (*g) return cmd_catalogue(cat, out);
  } catch (const ValidationFailed& e) {
    err << "error: invalid building description:\n";
    for (const auto& v : e.errors()) err << "  " << v.to_string() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ecodom"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ecodom::cli
