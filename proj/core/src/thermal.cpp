#include "ecodom/thermal.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "ecodom/error.hpp"
#include "ecodom/psychro.hpp"

namespace ecodom {

std::string_view to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::Roof: return "roof";
    case SurfaceKind::Wall: return "wall";
    case SurfaceKind::Window: return "window";
  }
  return "?";
}

std::string_view to_string(VentilationMode m) {
  return m == VentilationMode::Closed ? "closed" : "cross";
}

std::optional<VentilationMode> parse_ventilation_mode(std::string_view s) {
  if (s == "closed") return VentilationMode::Closed;
  if (s == "cross") return VentilationMode::Cross;
  return std::nullopt;
}

double mass_capacitance_per_m2(MassClass m) { return m == MassClass::Light ? 80.0 : 260.0; }

std::vector<std::string> ZoneModel::problems() const {
  std::vector<std::string> out;
  if (!(capacitance_j_k > 0.0)) out.push_back("capacitance must be > 0");
  if (!(volume_m3 > 0.0)) out.push_back("volume must be > 0");
  if (adiabatic_area_m2 < 0.0) out.push_back("adiabatic area must be >= 0");
  if (infiltration_ach < 0.0) out.push_back("infiltration must be >= 0");
  if (!gains_profile.empty() && gains_profile.size() != 24) out.push_back("gains profile needs 24 entries");
  for (const auto& s : surfaces) {
    if (!(s.area_m2 >= 0.0)) out.push_back(fmt::format("surface '{}': area must be >= 0", s.id));
    if (!(s.h_ext > 0.0) || !(s.h_int > 0.0)) out.push_back(fmt::format("surface '{}': films must be > 0", s.id));
    if (!(s.total_resistance() > 0.0)) out.push_back(fmt::format("surface '{}': total resistance must be > 0", s.id));
  }
  return out;
}

Apertures cross_ventilation_apertures(const BuildingDescription& building, const FacadePair& pair,
                                      double discharge_coefficient, double delta_cp) {
  const auto p = pair_porosity(building, pair);
  Apertures a;
  a.series_areas_m2 = {p.so1, p.si1, p.si2, p.so2};
  a.discharge_coefficient = discharge_coefficient;
  a.delta_cp = delta_cp;
  return a;
}

ZoneModel zone_from_building(const BuildingDescription& b, const ZoneOptions& o) {
  require_valid(b);
  if (!b.thermal) throw InputError(fmt::format("building '{}' has no thermal section", b.name));
  const auto& th = *b.thermal;

  ZoneModel z;
  z.id = b.name;
  z.latitude = b.latitude;
  z.longitude = b.longitude;
  z.floor_area_m2 = th.floor_area_m2;
  z.volume_m3 = th.floor_area_m2 * th.ceiling_height_m;
  z.mass = o.mass.value_or(th.mass);
  z.capacitance_j_k =
      kAirDensity * kAirHeatCapacity * z.volume_m3 + mass_capacitance_per_m2(z.mass) * 1000.0 * th.floor_area_m2;
  z.internal_gains_w = o.internal_gains_w.value_or(th.internal_gains_w);
  z.utc_offset_hours = o.utc_offset_hours;
  z.infiltration_ach = o.infiltration_ach;
  z.ventilation = o.ventilation;

  auto base = [&](std::string id, SurfaceKind kind) {
    SurfaceModel s;
    s.id = std::move(id);
    s.kind = kind;
    s.h_ext = o.h_ext;
    s.h_int = o.h_int;
    return s;
  };

  const bool has_roof = o.roof_exposed && b.roof.has_value();
  if (has_roof) {
    const auto& r = *b.roof;
    auto s = base(r.id, SurfaceKind::Roof);
    s.area_m2 = r.area_m2 > 0.0 ? r.area_m2 : th.floor_area_m2;
    s.tilt_deg = 0.0;
    s.absorptivity = absorptivity(r.color);
    s.resistance = r.structure_resistance + r.insulation.resistance();
    if (r.attic == AtticRegime::ClosedOrBarelyVentilated) s.resistance += o.closed_attic_resistance;
    if (r.attic == AtticRegime::WellVentilated) s.solar_factor = o.ventilated_attic_solar_factor;
    z.surfaces.push_back(std::move(s));
  }
  z.adiabatic_area_m2 = th.floor_area_m2 + (has_roof ? 0.0 : th.floor_area_m2);

  for (const auto& w : b.walls) {
    auto s = base(w.id, SurfaceKind::Wall);
    s.area_m2 = w.area_m2;
    s.azimuth_deg = azimuth_of(w.orientation);
    s.absorptivity = absorptivity(w.color);
    s.resistance = base_resistance(w.construction) + w.insulation.resistance();
    s.overhang = {w.overhang_depth_m, w.overhang_height_m, 0.0};
    if (w.full_shading) s.solar_factor = 1.0 - o.mobile_shading_fraction;
    z.surfaces.push_back(std::move(s));
  }

  for (const auto& w : b.windows) {
    auto s = base(w.id, SurfaceKind::Window);
    s.area_m2 = w.glazed_area_m2;
    s.azimuth_deg = azimuth_of(w.orientation);
    s.absorptivity = 0.0;
    s.resistance = th.window_resistance;
    s.shgc = th.window_shgc;
    s.overhang = {w.overhang_depth_m, w.height_m, w.shading_case == ShadingCase::Case1 ? w.offset_m : 0.0};
    if (w.mobile_shading) s.solar_factor = 1.0 - o.mobile_shading_fraction;
    z.surfaces.push_back(std::move(s));
  }

  if (o.ventilation == VentilationMode::Cross) {
    const FacadePair* pair = nullptr;
    for (const auto& p : b.facade_pairs) {
      if (!o.facade_pair || p.id == *o.facade_pair) {
        pair = &p;
        break;
      }
    }
    if (!pair) {
      throw InputError(o.facade_pair ? fmt::format("facade pair '{}' not declared", *o.facade_pair)
                                     : std::string("cross ventilation needs a declared facade pair"));
    }
    z.apertures = cross_ventilation_apertures(b, *pair, o.discharge_coefficient, o.delta_cp);
    z.ventilation_axis_azimuth_deg = b.find_facade(pair->facade_1)->azimuth_deg;
  }
  return z;
}

namespace {

// Boundary conditions of one weather record.
struct Forcing {
  double t_out = 0.0;
  std::vector<double> tsa;    // per surface
  std::vector<double> solar;  // per surface, transmitted W (windows only)
  double q_int = 0.0;
  double ach = 0.0;
  double h_vent = 0.0;
};

Forcing forcing_at(const ZoneModel& z, const WeatherRecord& w) {
  Forcing f;
  f.t_out = w.temperature_c;
  const auto sun = solar_position(z.latitude, z.longitude, w.time);
  f.tsa.reserve(z.surfaces.size());
  f.solar.reserve(z.surfaces.size());
  for (const auto& s : z.surfaces) {
    const auto irr = plane_irradiance(w.direct_normal_w_m2, w.diffuse_horizontal_w_m2, s.tilt_deg, s.azimuth_deg, sun);
    double shade = 0.0;
    if (s.shading_fraction_override) {
      shade = std::clamp(*s.shading_fraction_override, 0.0, 1.0);
    } else if (s.tilt_deg == 90.0 && s.overhang.depth_m > 0.0 && irr.direct_w_m2 > 0.0) {
      shade = overhang_shading_fraction(s.overhang, s.azimuth_deg, sun);
    }
    const double incident = (irr.direct_w_m2 * (1.0 - shade) + irr.diffuse_w_m2) * s.solar_factor;
    if (s.kind == SurfaceKind::Window) {
      f.tsa.push_back(w.temperature_c);
      f.solar.push_back(s.shgc * incident * s.area_m2);
    } else {
      f.tsa.push_back(sol_air_temperature(w.temperature_c, incident, s.absorptivity, s.h_ext));
      f.solar.push_back(0.0);
    }
  }

  double scale = 1.0;
  if (!z.gains_profile.empty()) {
    const auto local = w.time + std::chrono::seconds{std::llround(z.utc_offset_hours * 3600.0)};
    const auto hour = std::chrono::floor<std::chrono::hours>(local - std::chrono::floor<std::chrono::days>(local));
    scale = z.gains_profile[static_cast<std::size_t>(hour.count())];
  }
  f.q_int = z.internal_gains_w * scale;

  f.ach = z.infiltration_ach;
  if (z.ventilation == VentilationMode::Cross) {
    f.ach += ventilation_ach(z.apertures, w.wind_speed_m_s, w.wind_direction_deg - z.ventilation_axis_azimuth_deg,
                             z.volume_m3);
  }
  f.h_vent = kAirDensity * kAirHeatCapacity * f.ach * z.volume_m3 / 3600.0;
  return f;
}

Forcing lerp(const Forcing& a, const Forcing& b, double t) {
  auto mix = [t](double x, double y) { return x + (y - x) * t; };
  Forcing f;
  f.t_out = mix(a.t_out, b.t_out);
  f.tsa.resize(a.tsa.size());
  f.solar.resize(a.solar.size());
  for (std::size_t i = 0; i < a.tsa.size(); ++i) {
    f.tsa[i] = mix(a.tsa[i], b.tsa[i]);
    f.solar[i] = mix(a.solar[i], b.solar[i]);
  }
  f.q_int = mix(a.q_int, b.q_int);
  f.ach = mix(a.ach, b.ach);
  f.h_vent = mix(a.h_vent, b.h_vent);
  return f;
}

struct Flows {
  double net = 0.0;
  double gross = 0.0;
};

Flows flows_at(const ZoneModel& z, const Forcing& f, double t) {
  Flows fl;
  auto add = [&](double q) {
    fl.net += q;
    if (q > 0.0) fl.gross += q;
  };
  for (std::size_t i = 0; i < z.surfaces.size(); ++i) {
    add(z.surfaces[i].conductance() * (f.tsa[i] - t));
    add(f.solar[i]);
  }
  add(f.q_int);
  add(f.h_vent * (f.t_out - t));
  return fl;
}

struct StepStats {
  double max_residual = 0.0;
  double net_j = 0.0;
  double gross_j = 0.0;
};

// Advances T across one hour from forcing a to forcing b.
double advance(const ZoneModel& z, const Forcing& a, const Forcing& b, double t, int substeps, StepStats& st) {
  const double dt = 3600.0 / substeps;
  double h_surf = 0.0;
  for (const auto& s : z.surfaces) h_surf += s.conductance();
  const double c_dt = z.capacitance_j_k / dt;
  for (int j = 1; j <= substeps; ++j) {
    const auto f = lerp(a, b, static_cast<double>(j) / substeps);
    double drive = f.q_int + f.h_vent * f.t_out;
    for (std::size_t i = 0; i < z.surfaces.size(); ++i) {
      drive += z.surfaces[i].conductance() * f.tsa[i] + f.solar[i];
    }
    const double next = (c_dt * t + drive) / (c_dt + h_surf + f.h_vent);
    const auto fl = flows_at(z, f, next);
    const double stored = c_dt * (next - t);
    const double residual = std::abs(stored - fl.net) / std::max(fl.gross, 1e-9);
    st.max_residual = std::max(st.max_residual, residual);
    st.net_j += fl.net * dt;
    st.gross_j += fl.gross * dt;
    t = next;
  }
  return t;
}

}  // namespace

std::vector<double> SimulationResult::daily_mean_resultant(double utc_offset_hours) const {
  const auto shift = std::chrono::seconds{std::llround(utc_offset_hours * 3600.0)};
  std::map<std::chrono::sys_days, std::pair<double, int>> days;
  for (std::size_t i = 0; i < time.size(); ++i) {
    auto& d = days[std::chrono::floor<std::chrono::days>(time[i] + shift)];
    d.first += resultant_c[i];
    ++d.second;
  }
  std::vector<double> out;
  for (const auto& [_, d] : days) out.push_back(d.first / d.second);
  return out;
}

SimulationResult simulate(const ZoneModel& zone, const WeatherSeries& weather, const SimulationOptions& options) {
  if (const auto p = zone.problems(); !p.empty()) {
    std::string msg = "invalid zone model:";
    for (const auto& s : p) msg += " " + s + ";";
    throw std::invalid_argument(msg);
  }
  if (options.substeps < 1) throw std::invalid_argument("substeps must be >= 1");
  if (options.warmup_days < 0) throw std::invalid_argument("warmup_days must be >= 0");
  const auto& rec = weather.records;
  const auto missing = find_missing_hours(rec);
  if (!missing.empty()) {
    std::string list;
    for (const auto& t : missing) list += (list.empty() ? "" : ", ") + format_timestamp(t);
    throw InputError(fmt::format("weather has {} missing hour(s): {}", missing.size(), list));
  }
  for (std::size_t i = 1; i < rec.size(); ++i) {
    if (rec[i].time - rec[i - 1].time != std::chrono::hours{1}) {
      throw InputError(fmt::format("weather is not hourly at {}", format_timestamp(rec[i].time)));
    }
  }
  if (rec.size() < 24) throw InputError(fmt::format("weather covers {} h; at least 24 h are needed", rec.size()));

  std::vector<Forcing> forcing;
  forcing.reserve(rec.size());
  for (const auto& w : rec) forcing.push_back(forcing_at(zone, w));

  // Start the warm-up at the balance temperature of the mean first day, so a
  // heavy zone does not carry its initial transient into the record.
  double num = 0.0, den = 0.0;
  double h_surf = 0.0;
  for (const auto& s : zone.surfaces) h_surf += s.conductance();
  for (std::size_t h = 0; h < 24; ++h) {
    const auto& f = forcing[h];
    num += f.q_int + f.h_vent * f.t_out;
    for (std::size_t i = 0; i < zone.surfaces.size(); ++i) {
      num += zone.surfaces[i].conductance() * f.tsa[i] + f.solar[i];
    }
    den += h_surf + f.h_vent;
  }
  double t = den > 0.0 ? num / den : forcing[0].t_out;
  StepStats warm;
  for (int d = 0; d < options.warmup_days; ++d) {
    for (std::size_t h = 0; h < 24; ++h) t = advance(zone, forcing[h], forcing[(h + 1) % 24], t, options.substeps, warm);
  }

  SimulationResult r;
  const std::size_t n = rec.size();
  r.capacitance_j_k = zone.capacitance_j_k;
  r.surface_gains_w.assign(zone.surfaces.size(), std::vector<double>(n, 0.0));
  for (const auto& s : zone.surfaces) {
    r.surface_ids.push_back(s.id);
    r.surface_kinds.push_back(s.kind);
  }
  double area_total = zone.adiabatic_area_m2;
  for (const auto& s : zone.surfaces) area_total += s.area_m2;

  const double t_first = t;
  for (std::size_t k = 0; k < n; ++k) {
    StepStats st;
    if (k > 0) {
      t = advance(zone, forcing[k - 1], forcing[k], t, options.substeps, st);
      r.net_inflow_j += st.net_j;
      r.gross_gains_j += st.gross_j;
    }
    const auto& f = forcing[k];
    double radiant = zone.adiabatic_area_m2 * t;
    for (std::size_t i = 0; i < zone.surfaces.size(); ++i) {
      const auto& s = zone.surfaces[i];
      const double ts = t + (1.0 / s.h_int) / s.total_resistance() * (f.tsa[i] - t);
      radiant += s.area_m2 * ts;
      r.surface_gains_w[i][k] = s.conductance() * (f.tsa[i] - t) + f.solar[i];
    }
    const double mrt = area_total > 0.0 ? radiant / area_total : t;
    r.time.push_back(rec[k].time);
    r.outdoor_c.push_back(f.t_out);
    r.air_c.push_back(t);
    r.mean_radiant_c.push_back(mrt);
    r.resultant_c.push_back((t + mrt) / 2.0);
    r.ach.push_back(f.ach);
    r.max_residual.push_back(st.max_residual);
  }
  r.stored_energy_j = zone.capacitance_j_k * (t - t_first);
  return r;
}

GainShares gain_breakdown(const SimulationResult& result) {
  double roof = 0.0, walls = 0.0, windows = 0.0;
  for (std::size_t i = 0; i < result.surface_gains_w.size(); ++i) {
    double pos = 0.0;
    for (double q : result.surface_gains_w[i]) pos += std::max(0.0, q);
    switch (result.surface_kinds[i]) {
      case SurfaceKind::Roof: roof += pos; break;
      case SurfaceKind::Wall: walls += pos; break;
      case SurfaceKind::Window: windows += pos; break;
    }
  }
  const double total = roof + walls + windows;
  if (total <= 0.0) return {};
  return {roof / total, walls / total, windows / total};
}

IndoorSeries to_indoor_series(const SimulationResult& result, const WeatherSeries& weather,
                              const std::string& zone_id) {
  if (weather.records.size() != result.size()) {
    throw std::invalid_argument("weather and simulation result differ in length");
  }
  IndoorSeries s;
  s.records.reserve(result.size());
  for (std::size_t i = 0; i < result.size(); ++i) {
    const auto& w = weather.records[i];
    const double ratio = humidity_ratio(w.temperature_c, w.relative_humidity_pct) / 622.0;
    const double pv = ratio * kStandardPressurePa / (1.0 + ratio);
    IndoorRecord r;
    r.time = result.time[i];
    r.zone_id = zone_id;
    r.air_temperature_c = result.air_c[i];
    r.resultant_temperature_c = result.resultant_c[i];
    r.relative_humidity_pct = std::clamp(100.0 * pv / saturation_vapor_pressure(result.air_c[i]), 0.0, 100.0);
    s.records.push_back(std::move(r));
  }
  return s;
}

void write_simulation_csv(const SimulationResult& r, std::ostream& out) {
  out << "timestamp,outdoor_temperature_c,air_temperature_c,mean_radiant_temperature_c,resultant_temperature_c,ach";
  for (const auto& id : r.surface_ids) out << ",gain_" << id << "_w";
  out << '\n';
  for (std::size_t k = 0; k < r.size(); ++k) {
    out << format_timestamp(r.time[k])
        << fmt::format(",{:.4f},{:.4f},{:.4f},{:.4f},{:.4f}", r.outdoor_c[k], r.air_c[k], r.mean_radiant_c[k],
                       r.resultant_c[k], r.ach[k]);
    for (const auto& g : r.surface_gains_w) out << fmt::format(",{:.3f}", g[k]);
    out << '\n';
  }
}

Scenario parse_scenario(const nlohmann::json& doc, const std::string& source, const std::filesystem::path& base_dir) {
  auto fail = [&](const std::string& key, const std::string& what) {
    return InputError(fmt::format("{}: scenario key '{}': {}", source, key, what));
  };
  if (!doc.is_object()) throw InputError(fmt::format("{}: scenario must be a JSON object", source));
  Scenario sc;
  auto number = [&](const std::string& key, const nlohmann::json& v) {
    if (!v.is_number()) throw fail(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw fail(key, "must be finite");
    return x;
  };
  auto non_negative = [&](const std::string& key, const nlohmann::json& v) {
    const double x = number(key, v);
    if (x < 0.0) throw fail(key, "must be >= 0");
    return x;
  };
  auto positive = [&](const std::string& key, const nlohmann::json& v) {
    const double x = number(key, v);
    if (!(x > 0.0)) throw fail(key, "must be > 0");
    return x;
  };
  auto fraction = [&](const std::string& key, const nlohmann::json& v) {
    const double x = number(key, v);
    if (x < 0.0 || x > 1.0) throw fail(key, "must be within [0, 1]");
    return x;
  };
  auto integer = [&](const std::string& key, const nlohmann::json& v, int lo) {
    if (!v.is_number_integer() || v.get<long long>() < lo) throw fail(key, fmt::format("expected an integer >= {}", lo));
    return v.get<int>();
  };
  auto text = [&](const std::string& key, const nlohmann::json& v) {
    if (!v.is_string()) throw fail(key, "expected a string");
    return v.get<std::string>();
  };
  auto path = [&](const std::string& key, const nlohmann::json& v) {
    std::filesystem::path p = text(key, v);
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };

  for (const auto& [key, v] : doc.items()) {
    if (key == "format") {
      if (text(key, v) != "ecodom-scenario") throw fail(key, "must be 'ecodom-scenario'");
    } else if (key == "format_version") {
      if (v != 1) throw fail(key, "unsupported version");
    } else if (key == "building") {
      sc.building = path(key, v);
    } else if (key == "weather") {
      sc.weather = path(key, v);
    } else if (key == "roof_exposed") {
      if (!v.is_boolean()) throw fail(key, "expected true or false");
      sc.zone.roof_exposed = v.get<bool>();
    } else if (key == "ventilation") {
      auto m = parse_ventilation_mode(text(key, v));
      if (!m) throw fail(key, "expected 'closed' or 'cross'");
      sc.zone.ventilation = *m;
    } else if (key == "infiltration_ach") {
      sc.zone.infiltration_ach = non_negative(key, v);
    } else if (key == "internal_gains_w") {
      sc.zone.internal_gains_w = non_negative(key, v);
    } else if (key == "mass") {
      auto m = parse_mass_class(text(key, v));
      if (!m) throw fail(key, "expected 'light' or 'heavy'");
      sc.zone.mass = *m;
    } else if (key == "facade_pair") {
      sc.zone.facade_pair = text(key, v);
    } else if (key == "discharge_coefficient") {
      sc.zone.discharge_coefficient = positive(key, v);
    } else if (key == "delta_cp") {
      sc.zone.delta_cp = non_negative(key, v);
    } else if (key == "h_ext") {
      sc.zone.h_ext = positive(key, v);
    } else if (key == "h_int") {
      sc.zone.h_int = positive(key, v);
    } else if (key == "mobile_shading_fraction") {
      sc.zone.mobile_shading_fraction = fraction(key, v);
    } else if (key == "ventilated_attic_solar_factor") {
      sc.zone.ventilated_attic_solar_factor = fraction(key, v);
    } else if (key == "closed_attic_resistance") {
      sc.zone.closed_attic_resistance = non_negative(key, v);
    } else if (key == "utc_offset_hours") {
      sc.zone.utc_offset_hours = number(key, v);
    } else if (key == "substeps") {
      sc.solver.substeps = integer(key, v, 1);
    } else if (key == "warmup_days") {
      sc.solver.warmup_days = integer(key, v, 0);
    } else {
      throw fail(key, "unknown key");
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open scenario file '{}'", path.string()));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return parse_scenario(doc, path.string(), path.parent_path());
}

}  // namespace ecodom
