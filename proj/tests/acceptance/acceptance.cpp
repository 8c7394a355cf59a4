// Acceptance runner: one PASS/FAIL line per criterion, with the measured
// values and the wall time against its budget. Exit status is non-zero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "ecodom/building_io.hpp"
#include "ecodom/comfort.hpp"
#include "ecodom/psychro.hpp"
#include "ecodom/report.hpp"
#include "ecodom/rules.hpp"
#include "ecodom/solar.hpp"
#include "ecodom/thermal.hpp"
#include "ecodom/ventilation.hpp"
#include "oracles.hpp"

#ifdef ECODOM_HAVE_CLI
#include "ecodom/cli.hpp"
#endif

using namespace ecodom;
namespace t = ecodom::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const RuleCatalogue& cat() { return RuleCatalogue::builtin(); }

// ---------------------------------------------------------------- 1

Outcome table_fidelity() {
  int cells = 0, bad = 0;
  std::string first_bad;
  auto check = [&](bool ok, const std::string& what) {
    ++cells;
    if (!ok && bad++ == 0) first_bad = what;
  };
  for (const auto& c : t::roof_table()) {
    const auto& row = cat().roof_row(c.color, c.ventilated_attic);
    check(row.polystyrene_cm == c.polystyrene_cm, fmt::format("roof {} ps", to_string(c.color)));
    check(row.polyurethane_cm == c.polyurethane_cm, fmt::format("roof {} pu", to_string(c.color)));
  }
  for (const auto& c : t::overhang_table()) {
    check(cat().overhang_ratio(c.construction, c.color, c.orientation) == c.value,
          fmt::format("overhang {}/{}/{}", to_string(c.construction), to_string(c.color), to_string(c.orientation)));
  }
  for (const auto& c : t::wall_insulation_table()) {
    check(cat().wall_insulation_cm(c.construction, c.color, c.orientation) == c.value,
          fmt::format("wall insulation {}/{}/{}", to_string(c.construction), to_string(c.color),
                      to_string(c.orientation)));
  }
  for (const auto& c : t::window_table()) {
    check(cat().window_ratio(c.orientation) == c.ratio, fmt::format("window {}", to_string(c.orientation)));
  }
  for (const auto& c : t::collector_table()) {
    check(cat().collector_band(c.main_rooms).area_m2 == c.area_m2, fmt::format("collector F{}", c.main_rooms));
  }
  check(cat().storage_min_l_per_m2() == t::kStorageMinLPerM2, "storage min");
  check(cat().storage_max_l_per_m2() == t::kStorageMaxLPerM2, "storage max");
  check(cat().productivity_min_kwh_m2() == t::kProductivityMin, "productivity");
  check(cat().porosity_min() == t::kPorosityMin, "porosity");

  // The four examples quoted alongside the criterion.
  const bool examples =
      required_roof_insulation(cat(), Color::Medium, InsulationLayer{"polystyrene", 0.041, 0, false},
                               AtticRegime::None) == 8.0 &&
      required_overhang_ratio(cat(), WallConstruction::PouredConcrete15, Color::Medium, Orientation::West) == 1.3 &&
      required_window_ratio(cat(), Orientation::West) == 1.0 && cat().collector_band(4).area_m2 == 2.5;
  Outcome o;
  o.pass = bad == 0 && examples;
  o.detail = fmt::format("{} cells, {} mismatches{}; examples {}", cells, bad,
                         bad ? " (first: " + first_bad + ")" : "", examples ? "ok" : "WRONG");
  return o;
}

// ---------------------------------------------------------------- 2

const Finding* find(const ComplianceReport& r, const std::string& rule, const std::string& subject) {
  for (const auto& f : r.findings) {
    if (f.rule_id == rule && f.subject == subject) return &f;
  }
  return nullptr;
}

Outcome case_study() {
  const auto initial = compliance_report(load_building(t::fixture("la_decouverte_initial.json")), cat());
  const auto final_ = compliance_report(load_building(t::fixture("la_decouverte_final.json")), cat());
  const auto* roof = find(initial, "ROOF-1", "roof");
  const bool roof_ok = roof && roof->verdict == Verdict::Fail && roof->measured == 5.0 && roof->required == 8.0;
  int bedrooms = 0;
  for (const char* s : {"bed1/N", "bed2/N", "bed3/S"}) {
    const auto* f = find(initial, "VENT-4", s);
    if (f && f->verdict == Verdict::Fail && f->measured == 1.44 && f->required == 2.0) ++bedrooms;
  }
  Outcome o;
  o.pass = initial.overall == Verdict::Fail && roof_ok && bedrooms == 3 && final_.overall == Verdict::Pass &&
           final_.count(Verdict::Fail) == 0;
  o.detail = fmt::format(
      "initial {} ({} fails; roof {} cm < {} cm: {}; bedrooms at 1.44 < 2 m2: {}/3), final {} ({} fails)",
      to_string(initial.overall), initial.count(Verdict::Fail), roof ? *roof->measured : -1.0,
      roof ? *roof->required : -1.0, roof_ok ? "yes" : "no", bedrooms, to_string(final_.overall),
      final_.count(Verdict::Fail));
  return o;
}

// ---------------------------------------------------------------- 3

Outcome porosity_suite() {
  int failures = 0;
  // Spot arithmetic.
  const auto p = porosity({2.0, 2.0, 8.0, 8.0});
  if (!(p.sp == 8.0 && p.p1 == 0.25 && p.p2 == 0.25)) ++failures;
  const auto q = porosity({1.5, 3.0, 10.0, 14.0});
  if (!(q.sp == 12.0 && q.p1 == 0.125 && q.p2 == 0.25)) ++failures;
  if (porosity({0.0, 1.0, 4.0, 4.0}).p1 != 0.0) ++failures;

  std::mt19937_64 rng(1997);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    auto rb = t::random_building(rng);
    const auto pp = pair_porosity(rb.building, rb.building.facade_pairs[0]);
    if (std::abs(pp.sp - rb.oracle.sp()) > 1e-9 || std::abs(pp.p1 - rb.oracle.p1()) > 1e-12 ||
        std::abs(pp.p2 - rb.oracle.p2()) > 1e-12) {
      ++failures;
    }
    const double k = scale(rng);
    auto scaled = rb.building;
    for (auto& r : scaled.rooms) {
      for (auto& m : r.facades) m.gross_area_m2 *= k;
      for (auto& o : r.external_openings) o.net_area_m2 *= k;
    }
    const auto ps = pair_porosity(scaled, scaled.facade_pairs[0]);
    if (std::abs(ps.p1 - pp.p1) > 1e-12 * std::max(1.0, pp.p1) ||
        std::abs(ps.p2 - pp.p2) > 1e-12 * std::max(1.0, pp.p2)) {
      ++failures;
    }
    auto bigger = rb.building;
    for (auto& r : bigger.rooms) {
      if (r.kind == RoomKind::Main && !r.external_openings.empty()) {
        r.external_openings.front().net_area_m2 += 0.5;
        break;
      }
    }
    const auto pb = pair_porosity(bigger, bigger.facade_pairs[0]);
    if (pb.p1 < pp.p1 || pb.p2 < pp.p2) ++failures;
  }
  return {failures == 0, fmt::format("{} random buildings, 3 spot checks, {} violations", n, failures)};
}

// ---------------------------------------------------------------- 4

ZoneModel flat_zone(const BuildingDescription& b, bool roof_exposed) {
  ZoneOptions o;
  o.roof_exposed = roof_exposed;
  o.ventilation = VentilationMode::Closed;
  return zone_from_building(b, o);
}

struct DailyOffsets {
  std::vector<double> days;
  double mean() const { return std::accumulate(days.begin(), days.end(), 0.0) / days.size(); }
  double min() const { return *std::min_element(days.begin(), days.end()); }
  double max() const { return *std::max_element(days.begin(), days.end()); }
};

DailyOffsets roof_offset(const BuildingDescription& b, const WeatherSeries& w, double utc_offset) {
  const auto top = simulate(flat_zone(b, true), w).daily_mean_resultant(utc_offset);
  const auto mid = simulate(flat_zone(b, false), w).daily_mean_resultant(utc_offset);
  DailyOffsets d;
  for (std::size_t i = 0; i < top.size(); ++i) d.days.push_back(top[i] - mid[i]);
  return d;
}

Outcome thermal_calibration() {
  const auto weather = synthetic_weather({});
  const double utc_offset = SyntheticWeatherParams{}.utc_offset_hours;
  const auto compliant = load_building(t::fixture("ecodom_flat_top.json"));
  const auto base = roof_offset(compliant, weather, utc_offset);

  auto bare = compliant;
  bare.roof->color = Color::Dark;
  bare.roof->insulation.thickness_cm = 0.0;
  const auto dark = roof_offset(bare, weather, utc_offset);
  const double increase = dark.mean() - base.mean();

  Outcome o;
  o.pass = base.days.size() == 7 && base.min() >= 0.5 && base.max() <= 2.0 && increase >= 1.5;
  o.detail = fmt::format(
      "compliant offset {:.2f} C (daily {:.2f}..{:.2f}, band [0.5, 2.0]); dark uninsulated {:.2f} C, "
      "increase {:.2f} C (need >= 1.5)",
      base.mean(), base.min(), base.max(), dark.mean(), increase);
  return o;
}

// ---------------------------------------------------------------- 5

Outcome gain_shares() {
  ZoneOptions opt;
  opt.ventilation = VentilationMode::Cross;
  const auto zone = zone_from_building(load_building(t::fixture("typical_uninsulated.json")), opt);
  const auto g = gain_breakdown(simulate(zone, synthetic_weather({})));
  Outcome o;
  o.pass = g.roof >= 0.50 && g.walls >= 0.15 && g.walls <= 0.40 && g.windows >= 0.10 && g.windows <= 0.40;
  o.detail = fmt::format("roof {:.3f} (>= 0.50), walls {:.3f} ([0.15, 0.40]), windows {:.3f} ([0.10, 0.40])",
                         g.roof, g.walls, g.windows);
  return o;
}

// ---------------------------------------------------------------- 6

Outcome ventilation_calibration() {
  ZoneOptions opt;
  opt.ventilation = VentilationMode::Cross;
  const auto b = load_building(t::fixture("ventilation_reference.json"));
  const auto por = facade_porosities(b).at(0);
  const auto zone = zone_from_building(b, opt);
  const double ach4 = ventilation_ach(zone.apertures, 4.0, 0.0, zone.volume_m3);
  const double ach2 = ventilation_ach(zone.apertures, 2.0, 0.0, zone.volume_m3);
  const double ach8 = ventilation_ach(zone.apertures, 8.0, 0.0, zone.volume_m3);
  const bool linear = std::abs(ach8 - 2.0 * ach4) <= 1e-9 * ach4 && std::abs(ach4 - 2.0 * ach2) <= 1e-9 * ach4;
  auto closed = zone.apertures;
  closed.series_areas_m2[0] = 0.0;
  const double zero = ventilation_ach(closed, 4.0, 0.0, zone.volume_m3);
  Outcome o;
  o.pass = ach4 >= 40.0 && linear && zero == 0.0;
  o.detail = fmt::format("P1 {:.3f}, P2 {:.3f}; ACH at 4 m/s {:.1f} (>= 40); linear in U: {}; zero aperture {:.1f}",
                         por.p1, por.p2, ach4, linear ? "yes" : "no", zero);
  return o;
}

// ---------------------------------------------------------------- 7

Outcome numerical_suites() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> depth(0.0, 2.0), height(0.2, 3.0), offset(0.0, 1.0);
  std::uniform_real_distribution<double> alt(0.5, 89.5), rel(-89.5, 89.5), surf(0.0, 360.0);
  double shading_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const OverhangGeometry g{depth(rng), height(rng), offset(rng)};
    const double a = alt(rng), r = rel(rng), s = surf(rng);
    SolarPosition sun;
    sun.altitude_deg = a;
    sun.azimuth_deg = std::fmod(s + r + 360.0, 360.0);
    const double analytic = overhang_shading_fraction(g, s, sun);
    shading_err = std::max(shading_err, std::abs(analytic - t::shading_ray_oracle(g.depth_m, g.height_m,
                                                                                   g.offset_m, a, r, rng)));
  }

  double psat_err = 0.0, w_err = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double tc = 0.5 * i;
    const double ref = t::if97_saturation_pressure_pa(std::max(tc, 0.01));
    psat_err = std::max(psat_err, std::abs(saturation_vapor_pressure(tc) - ref) / ref);
    for (int rh = 10; rh <= 100; rh += 10) {
      const double wref = t::oracle_humidity_ratio(std::max(tc, 0.01), rh);
      w_err = std::max(w_err, std::abs(humidity_ratio(tc, rh) - wref) / wref);
    }
  }

  ZoneOptions zo;
  zo.ventilation = VentilationMode::Closed;
  const auto zone = zone_from_building(load_building(t::fixture("ecodom_flat_top.json")), zo);
  const auto weather = synthetic_weather({});
  SimulationOptions coarse, fine;
  fine.substeps = coarse.substeps * 2;
  const auto a = simulate(zone, weather, coarse);
  const auto b = simulate(zone, weather, fine);
  const double residual = *std::max_element(a.max_residual.begin(), a.max_residual.end());
  const auto da = a.daily_mean_resultant(4.0);
  const auto db = b.daily_mean_resultant(4.0);
  double halving = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) halving = std::max(halving, std::abs(da[i] - db[i]));

  Outcome o;
  o.pass = shading_err <= 0.02 && psat_err <= 0.005 && w_err <= 0.005 && residual <= 1e-3 && halving < 0.05;
  o.detail = fmt::format(
      "shading max error {:.4f} (<= 0.02, 1000 cases); psat {:.3f}% and w {:.3f}% (<= 0.5%); residual {:.1e} "
      "(<= 1e-3); step halving {:.4f} C (< 0.05)",
      shading_err, 100.0 * psat_err, 100.0 * w_err, residual, halving);
  return o;
}

// ---------------------------------------------------------------- 8

Outcome determinism() {
  std::vector<std::pair<std::string, bool>> checks;
  auto twice = [&](const std::string& name, const std::function<std::string()>& produce) {
    checks.emplace_back(name, produce() == produce());
  };
#ifdef ECODOM_HAVE_CLI
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "ecodom_acceptance";
  fs::create_directories(dir);
  auto via_cli = [&](std::vector<std::string> args, const std::string& out_name) {
    return [=]() {
      std::ostringstream out, err;
      auto a = args;
      if (!out_name.empty()) {
        a.push_back("--out");
        a.push_back((dir / out_name).string());
      }
      cli::run(a, out, err);
      return out_name.empty() ? out.str() : t::slurp(dir / out_name);
    };
  };
  twice("check --format json",
        via_cli({"check", t::fixture("la_decouverte_initial.json").string(), "--format", "json"}, ""));
  twice("simulate csv", via_cli({"simulate", "--scenario", t::fixture("scenario_flat_closed.json").string()},
                                "sim.csv"));
  twice("comfort scatter", via_cli({"comfort", t::fixture("indoor_two_zones_30min.csv").string()}, "scatter.csv"));
  twice("weather csv", via_cli({"weather", "--days", "7"}, "weather.csv"));
  fs::remove_all(dir);
#else
  twice("report json", [] {
    return report_to_json(compliance_report(load_building(t::fixture("la_decouverte_initial.json")), cat()))
        .dump(2);
  });
#endif
  twice("building json", [] {
    return building_to_json(load_building(t::fixture("la_decouverte_final.json"))).dump(2);
  });
  bool all = true;
  std::string detail;
  for (const auto& [name, same] : checks) {
    all = all && same;
    detail += fmt::format("{}{}: {}", detail.empty() ? "" : ", ", name, same ? "identical" : "DIFFERENT");
  }
  return {all, detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "rule-table fidelity", 1.0, table_fidelity},
      {2, "case-study golden test", 1.0, case_study},
      {3, "porosity formulas", 5.0, porosity_suite},
      {4, "thermal calibration", 10.0, thermal_calibration},
      {5, "gain-share sanity", 10.0, gain_shares},
      {6, "ventilation calibration", 1.0, ventilation_calibration},
      {7, "numerical property suites", 60.0, numerical_suites},
      {8, "determinism", 60.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::cout << fmt::format("{} criterion {}: {} | {} | {:.3f} s (budget {:.0f} s{})\n", pass ? "PASS" : "FAIL",
                             c.id, c.name, o.detail, secs, c.budget_s, in_time ? "" : ", EXCEEDED");
  }
  std::cout << fmt::format("{} of {} criteria passed\n", 8 - failed, 8);
  return failed == 0 ? 0 : 1;
}
