#include "ecodom/rules.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace ecodom {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not_applicable";
    case Verdict::Informational: return "informational";
  }
  return "pass";
}

std::string_view to_string(Comparison c) { return c == Comparison::AtLeast ? ">=" : "<="; }

std::optional<SiRule> parse_si_rule(std::string_view s) {
  if (s == "min") return SiRule::Min;
  if (s == "max") return SiRule::Max;
  return std::nullopt;
}

std::size_t ComplianceReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [v](const Finding& f) { return f.verdict == v; }));
}

namespace {

// Table values are compared after arithmetic on decimal inputs, so allow a
// relative slack far below any physically meaningful difference.
bool at_least(double measured, double required) {
  return measured >= required - 1e-9 * std::max(1.0, std::abs(required));
}

Finding make(const char* rule_id, std::string subject) {
  Finding f;
  f.rule_id = rule_id;
  f.subject = std::move(subject);
  return f;
}

std::string fmt_num(double v) { return fmt::format("{:.3g}", v); }

// Reference conductivity whose table column governs a material.
enum class ReferenceClass { Polyurethane, Polystyrene, Equivalent };

ReferenceClass reference_class(const RuleCatalogue& cat, double conductivity) {
  if (conductivity <= cat.polyurethane_conductivity()) return ReferenceClass::Polyurethane;
  if (conductivity <= cat.polystyrene_conductivity()) return ReferenceClass::Polystyrene;
  return ReferenceClass::Equivalent;
}

// Thickness (cm) of `material` that satisfies the roof rule.
double required_roof_cm_for(const RuleCatalogue& cat, Color color, const InsulationLayer& material,
                            AtticRegime attic) {
  const RoofRow& row = cat.roof_row(color, attic == AtticRegime::WellVentilated);
  switch (reference_class(cat, material.conductivity)) {
    case ReferenceClass::Polyurethane:
      if (material.conductivity == cat.polyurethane_conductivity()) return row.polyurethane_cm;
      return row.polyurethane_cm * material.conductivity / cat.polyurethane_conductivity();
    case ReferenceClass::Polystyrene:
      if (material.conductivity == cat.polystyrene_conductivity()) return row.polystyrene_cm;
      return row.polystyrene_cm * material.conductivity / cat.polystyrene_conductivity();
    case ReferenceClass::Equivalent:
      return row.polystyrene_cm * material.conductivity / cat.polystyrene_conductivity();
  }
  return row.polystyrene_cm;
}

Finding humidity_warning(const char* rule_id, const std::string& subject, const InsulationLayer& ins) {
  Finding f = make(rule_id, subject);
  f.verdict = Verdict::Informational;
  f.quantity = "humidity_protection";
  f.message = fmt::format(
      "warning: {} loses its insulating value when it absorbs ambient humidity and no protection is attested",
      ins.material);
  f.remediation = "use polystyrene or polyurethane, or attest humidity protection of the mineral wool";
  return f;
}

}  // namespace

// ----------------------------------------------------------------- roof

double required_roof_insulation(const RuleCatalogue& cat, Color color, const InsulationLayer& material,
                                AtticRegime attic) {
  const RoofRow& row = cat.roof_row(color, attic == AtticRegime::WellVentilated);
  switch (reference_class(cat, material.conductivity)) {
    case ReferenceClass::Polyurethane: return row.polyurethane_cm;
    case ReferenceClass::Polystyrene: return row.polystyrene_cm;
    case ReferenceClass::Equivalent:
      return row.polystyrene_cm * material.conductivity / cat.polystyrene_conductivity();
  }
  return row.polystyrene_cm;
}

double required_roof_resistance(const RuleCatalogue& cat, Color color, const InsulationLayer& material,
                                AtticRegime attic) {
  const RoofRow& row = cat.roof_row(color, attic == AtticRegime::WellVentilated);
  if (reference_class(cat, material.conductivity) == ReferenceClass::Polyurethane) {
    return row.polyurethane_cm / 100.0 / cat.polyurethane_conductivity();
  }
  return row.polystyrene_cm / 100.0 / cat.polystyrene_conductivity();
}

Finding check_roof(const RoofSpec& roof, const RuleCatalogue& cat) {
  Finding f = make(rule::kRoofInsulation, roof.id);
  const auto& ins = roof.insulation;
  const double required_cm = required_roof_cm_for(cat, roof.color, ins, roof.attic);
  f.quantity = "insulation_thickness_cm";
  f.measured = ins.thickness_cm;
  f.required = required_cm;
  const std::string regime =
      roof.attic == AtticRegime::WellVentilated ? "roof over a well-ventilated attic" : "simple roof";
  if (at_least(ins.thickness_cm, required_cm)) {
    f.verdict = Verdict::Pass;
    f.message = fmt::format("{} {}: {} cm of {} (lambda {}) meets the {} cm requirement",
                            to_string(roof.color), regime, fmt_num(ins.thickness_cm), ins.material,
                            fmt_num(ins.conductivity), fmt_num(required_cm));
  } else {
    f.verdict = Verdict::Fail;
    const double missing = required_cm - ins.thickness_cm;
    f.message = fmt::format("{} {}: {} cm of {} (lambda {}) is below the required {} cm",
                            to_string(roof.color), regime, fmt_num(ins.thickness_cm), ins.material,
                            fmt_num(ins.conductivity), fmt_num(required_cm));
    f.remediation = fmt::format("add {} cm of insulation at lambda {} (total {} cm)", fmt_num(missing),
                                fmt_num(ins.conductivity), fmt_num(required_cm));
    f.remedies.push_back({"insulation_thickness_cm", required_cm, "cm"});
  }
  return f;
}

// ----------------------------------------------------------------- walls

std::optional<double> required_overhang_ratio(const RuleCatalogue& cat, WallConstruction c, Color color,
                                              Orientation o) {
  if (color == Color::Dark) return std::nullopt;
  return cat.overhang_ratio(c, color, o);
}

std::optional<double> required_wall_insulation(const RuleCatalogue& cat, WallConstruction c, Color color,
                                               Orientation o) {
  if (color == Color::Dark) return std::nullopt;
  return cat.wall_insulation_cm(c, color, o);
}

Finding check_wall(const WallSpec& wall, const RuleCatalogue& cat) {
  Finding f = make(rule::kWallProtection, wall.id);
  const std::string what = fmt::format("{} {} wall facing {}", to_string(wall.color),
                                       to_string(wall.construction), to_string(wall.orientation));
  if (wall.full_shading) {
    f.verdict = Verdict::Pass;
    f.quantity = "full_shading";
    f.measured = 1.0;
    f.required = 1.0;
    f.message = what + ": full-height shading device or ventilated double skin";
    return f;
  }

  const auto ratio_req = required_overhang_ratio(cat, wall.construction, wall.color, wall.orientation);
  const auto ins_req_cm = required_wall_insulation(cat, wall.construction, wall.color, wall.orientation);
  if (!ratio_req || !ins_req_cm) {
    f.verdict = Verdict::Fail;
    f.quantity = "absorptivity";
    f.measured = absorptivity(wall.color);
    f.required = absorptivity(Color::Medium);
    f.comparison = Comparison::AtMost;
    f.message = what + ": no prescription exists for this colour";
    f.remediation = "repaint light or medium, or cover the whole wall with a shading device";
    f.remedies.push_back({"full_shading", 1.0, "flag"});
    return f;
  }

  const double ratio = wall.overhang_ratio();
  const double r_required = *ins_req_cm / 100.0 / cat.wall_reference_conductivity();
  const double r_installed = wall.insulation.resistance();
  const double target_cm = r_required * wall.insulation.conductivity * 100.0;

  if (at_least(ratio, *ratio_req)) {
    f.verdict = Verdict::Pass;
    f.quantity = "overhang_ratio";
    f.measured = ratio;
    f.required = *ratio_req;
    f.message = fmt::format("{}: overhang d/h {} meets {}", what, fmt_num(ratio), fmt_num(*ratio_req));
    return f;
  }
  if (at_least(r_installed, r_required)) {
    f.verdict = Verdict::Pass;
    f.quantity = "insulation_thickness_cm";
    f.measured = wall.insulation.thickness_cm;
    f.required = target_cm;
    f.message = fmt::format("{}: {} cm insulation (lambda {}) meets {} cm at lambda {}", what,
                            fmt_num(wall.insulation.thickness_cm), fmt_num(wall.insulation.conductivity),
                            fmt_num(*ins_req_cm), fmt_num(cat.wall_reference_conductivity()));
    return f;
  }

  f.verdict = Verdict::Fail;
  f.quantity = "overhang_ratio";
  f.measured = ratio;
  f.required = *ratio_req;
  f.message = fmt::format("{}: overhang d/h {} below {} and insulation {} cm below {} cm", what,
                          fmt_num(ratio), fmt_num(*ratio_req), fmt_num(wall.insulation.thickness_cm),
                          fmt_num(target_cm));
  if (wall.overhang_height_m > 0.0) {
    const double depth = *ratio_req * wall.overhang_height_m;
    f.remediation = fmt::format("extend the overhang to d >= {} m (d/h >= {} with h = {} m), or ",
                                fmt_num(depth), fmt_num(*ratio_req), fmt_num(wall.overhang_height_m));
    f.remedies.push_back({"overhang_depth_m", depth, "m"});
  } else {
    f.remediation = fmt::format("add an overhang with d >= {} x h, or ", fmt_num(*ratio_req));
  }
  f.remediation += fmt::format("insulate with {} more cm at lambda {}",
                               fmt_num(target_cm - wall.insulation.thickness_cm),
                               fmt_num(wall.insulation.conductivity));
  f.remedies.push_back({"insulation_thickness_cm", target_cm, "cm"});
  return f;
}

// --------------------------------------------------------------- windows

double required_window_ratio(const RuleCatalogue& cat, Orientation o) { return cat.window_ratio(o); }

Finding check_window(const WindowSpec& window, const RuleCatalogue& cat) {
  Finding f = make(rule::kWindowProtection, window.id);
  const char* form = window.shading_case == ShadingCase::Case1 ? "d/(2a+h)" : "d/h";
  if (window.mobile_shading) {
    f.verdict = Verdict::Pass;
    f.quantity = "mobile_shading";
    f.measured = 1.0;
    f.required = 1.0;
    f.message = fmt::format("window facing {}: opaque mobile louvers or blinds", to_string(window.orientation));
    return f;
  }
  const double req = required_window_ratio(cat, window.orientation);
  const double ratio = window.overhang_ratio();
  f.quantity = "overhang_ratio";
  f.measured = ratio;
  f.required = req;
  if (at_least(ratio, req)) {
    f.verdict = Verdict::Pass;
    f.message = fmt::format("window facing {}: {} = {} meets {}", to_string(window.orientation), form,
                            fmt_num(ratio), fmt_num(req));
    return f;
  }
  f.verdict = Verdict::Fail;
  const double depth = window.depth_for_ratio(req);
  f.message = fmt::format("window facing {}: {} = {} below {}", to_string(window.orientation), form,
                          fmt_num(ratio), fmt_num(req));
  f.remediation = fmt::format("extend the overhang to d >= {} m, or fit opaque mobile louvers", fmt_num(depth));
  f.remedies.push_back({"overhang_depth_m", depth, "m"});
  return f;
}

// ----------------------------------------------------------- ventilation

std::vector<Finding> check_ventilation(const BuildingDescription& b, const RuleCatalogue& cat,
                                       const RuleOptions& options) {
  std::vector<Finding> out;
  const double pmin = cat.porosity_min();

  if (b.facade_pairs.empty()) {
    Finding f = make(rule::kFacadePairs, b.name);
    f.verdict = Verdict::Fail;
    f.quantity = "facade_pairs";
    f.measured = 0.0;
    f.required = 1.0;
    f.message = "no pair of opposite facades is declared; cross ventilation cannot be assessed";
    f.remediation =
        "declare each cross-ventilation axis as a facade pair (two opposite facades of the main rooms)";
    out.push_back(std::move(f));
  }

  for (const auto& pair : b.facade_pairs) {
    const PairPorosity p = pair_porosity(b, pair);
    const std::array<std::tuple<const std::string*, double, double>, 2> sides{
        std::tuple{&pair.facade_1, p.so1, p.p1}, std::tuple{&pair.facade_2, p.so2, p.p2}};
    for (const auto& [facade, so, pk] : sides) {
      Finding f = make(rule::kExternalPorosity, fmt::format("{}/{}", pair.id, *facade));
      f.quantity = "external_porosity";
      f.measured = pk;
      f.required = pmin;
      const std::string detail =
          fmt::format("So = {} m2 over Sp = {} m2 (Sp1 = {}, Sp2 = {})", fmt_num(so), fmt_num(p.sp),
                      fmt_num(p.sp1), fmt_num(p.sp2));
      if (at_least(pk, pmin)) {
        f.verdict = Verdict::Pass;
        f.message = fmt::format("porosity {} meets {}: {}", fmt_num(pk), fmt_num(pmin), detail);
      } else {
        f.verdict = Verdict::Fail;
        const double missing = pmin * p.sp - so;
        f.message = fmt::format("porosity {} below {}: {}", fmt_num(pk), fmt_num(pmin), detail);
        f.remediation = fmt::format("add {} m2 of net opening to main rooms on facade '{}'",
                                    fmt_num(missing), *facade);
        f.remedies.push_back({"opening_area_added_m2", missing, "m2"});
      }
      out.push_back(std::move(f));
    }

    const double so_req = options.si_rule == SiRule::Min ? std::min(p.so1, p.so2) : std::max(p.so1, p.so2);
    const std::array<std::pair<int, double>, 2> internal{std::pair{1, p.si1}, std::pair{2, p.si2}};
    for (const auto& [side, si] : internal) {
      Finding f = make(rule::kInternalPorosity, fmt::format("{}/Si{}", pair.id, side));
      f.quantity = "internal_opening_area_m2";
      f.measured = si;
      f.required = so_req;
      const char* rule_name = options.si_rule == SiRule::Min ? "min" : "max";
      if (at_least(si, so_req)) {
        f.verdict = Verdict::Pass;
        f.message = fmt::format("Si{} = {} m2 meets {}(So1, So2) = {} m2", side, fmt_num(si), rule_name,
                                fmt_num(so_req));
      } else {
        f.verdict = Verdict::Fail;
        f.message = fmt::format("Si{} = {} m2 below {}(So1, So2) = {} m2", side, fmt_num(si), rule_name,
                                fmt_num(so_req));
        f.remediation = fmt::format("add {} m2 of internal openings (doors, fanlights) on the flow path",
                                    fmt_num(so_req - si));
        f.remedies.push_back({"internal_opening_area_added_m2", so_req - si, "m2"});
      }
      out.push_back(std::move(f));
    }
  }

  for (const auto& room : b.rooms) {
    if (room.kind != RoomKind::Main) continue;

    // Per-room porosity on each facade that belongs to a declared axis.
    for (const auto& m : room.facades) {
      const bool on_axis = std::any_of(b.facade_pairs.begin(), b.facade_pairs.end(), [&](const FacadePair& p) {
        return (p.facade_1 == m.facade_id || p.facade_2 == m.facade_id) &&
               (!p.level || *p.level == room.floor_level);
      });
      if (!on_axis) continue;
      Finding f = make(rule::kRoomPorosity, fmt::format("{}/{}", room.id, m.facade_id));
      const double gross = room.gross_area_on(m.facade_id);
      const double open = room.opening_area_on(m.facade_id);
      const double required = pmin * gross;
      f.quantity = "room_opening_area_m2";
      f.measured = open;
      f.required = required;
      if (at_least(open, required)) {
        f.verdict = Verdict::Pass;
        f.message = fmt::format("{} m2 of net opening on {} m2 of facade meets {} m2", fmt_num(open),
                                fmt_num(gross), fmt_num(required));
      } else {
        f.verdict = Verdict::Fail;
        f.message = fmt::format("{} m2 of net opening on {} m2 of facade is below {} m2", fmt_num(open),
                                fmt_num(gross), fmt_num(required));
        f.remediation = fmt::format("+{} m2 net opening (e.g. replace windows by glazed doors)",
                                    fmt_num(required - open));
        f.remedies.push_back({"opening_area_added_m2", required - open, "m2"});
      }
      out.push_back(std::move(f));
    }

    Finding f = make(rule::kRoomLayout, room.id);
    f.quantity = "cross_ventilation_path";
    f.required = 1.0;
    bool opposite_openings = false;
    for (const auto& a : room.external_openings) {
      for (const auto& c : room.external_openings) {
        if (!a.facade_id || !c.facade_id || a.net_area_m2 <= 0.0 || c.net_area_m2 <= 0.0) continue;
        const Facade* fa = b.find_facade(*a.facade_id);
        const Facade* fc = b.find_facade(*c.facade_id);
        if (fa && fc && opposite(fa->orientation()) == fc->orientation()) opposite_openings = true;
      }
    }
    double external = 0.0;
    for (const auto& o : room.external_openings) external += o.net_area_m2;
    const bool internal_path = external > 0.0 && room.internal_opening_area() > 0.0;
    f.measured = (opposite_openings || internal_path) ? 1.0 : 0.0;
    if (opposite_openings || internal_path) {
      f.verdict = Verdict::Pass;
      f.message = opposite_openings ? "external openings on two opposite facades"
                                    : "external opening with an internal flow path";
    } else {
      f.verdict = Verdict::Fail;
      f.message = "no cross-ventilation path: needs openings on two opposite facades or an internal opening";
      f.remediation = external > 0.0 ? "add an internal opening (door, fanlight) towards the opposite facade"
                                     : "add an external opening and a path to the opposite facade";
    }
    out.push_back(std::move(f));
  }
  return out;
}

// ----------------------------------------------------------- water heater

std::vector<Finding> check_water_heater(const WaterHeaterSpec& spec, int dwelling_type,
                                        const RuleCatalogue& cat) {
  std::vector<Finding> out;
  const std::string subject = "water_heater";

  if (spec.kind == WaterHeaterKind::Solar) {
    const CollectorBand& band = cat.collector_band(dwelling_type);
    {
      Finding f = make(rule::kCollectorArea, subject);
      f.quantity = "collector_area_m2";
      f.measured = spec.collector_area_m2;
      f.required = band.area_m2;
      if (at_least(spec.collector_area_m2, band.area_m2)) {
        f.verdict = Verdict::Pass;
        f.message = fmt::format("{} m2 of collectors meets {} m2 for {}", fmt_num(spec.collector_area_m2),
                                fmt_num(band.area_m2), band.label);
      } else {
        f.verdict = Verdict::Fail;
        f.message = fmt::format("{} m2 of collectors is below {} m2 for {}",
                                fmt_num(spec.collector_area_m2), fmt_num(band.area_m2), band.label);
        f.remediation = fmt::format("install at least {} m2 of net collector area", fmt_num(band.area_m2));
        f.remedies.push_back({"collector_area_m2", band.area_m2, "m2"});
      }
      out.push_back(std::move(f));
    }
    {
      Finding f = make(rule::kStorageRatio, subject);
      f.quantity = "storage_l_per_m2";
      if (!(spec.collector_area_m2 > 0.0)) {
        f.verdict = Verdict::NotApplicable;
        f.message = "no collector area; storage ratio undefined";
      } else {
        const double ratio = spec.tank_volume_l / spec.collector_area_m2;
        f.measured = ratio;
        if (!at_least(ratio, cat.storage_min_l_per_m2())) {
          f.verdict = Verdict::Fail;
          f.required = cat.storage_min_l_per_m2();
          f.message = fmt::format("{} L/m2 of storage is below {} L/m2", fmt_num(ratio),
                                  fmt_num(cat.storage_min_l_per_m2()));
          const double tank = cat.storage_min_l_per_m2() * spec.collector_area_m2;
          f.remediation = fmt::format("use a tank of at least {} L", fmt_num(tank));
          f.remedies.push_back({"tank_volume_l", tank, "L"});
        } else if (!at_least(cat.storage_max_l_per_m2(), ratio)) {
          f.verdict = Verdict::Fail;
          f.required = cat.storage_max_l_per_m2();
          f.comparison = Comparison::AtMost;
          f.message = fmt::format("{} L/m2 of storage exceeds {} L/m2", fmt_num(ratio),
                                  fmt_num(cat.storage_max_l_per_m2()));
          const double tank = cat.storage_max_l_per_m2() * spec.collector_area_m2;
          f.remediation = fmt::format("use a tank of at most {} L or enlarge the collectors", fmt_num(tank));
          f.remedies.push_back({"tank_volume_l", tank, "L"});
        } else {
          f.verdict = Verdict::Pass;
          f.required = cat.storage_min_l_per_m2();
          f.message = fmt::format("{} L/m2 of storage lies within [{}, {}] L/m2", fmt_num(ratio),
                                  fmt_num(cat.storage_min_l_per_m2()), fmt_num(cat.storage_max_l_per_m2()));
        }
      }
      out.push_back(std::move(f));
    }
    {
      Finding f = make(rule::kProductivity, subject);
      f.quantity = "annual_productivity_kwh_m2";
      f.measured = spec.annual_productivity_kwh_m2;
      f.required = cat.productivity_min_kwh_m2();
      if (at_least(spec.annual_productivity_kwh_m2, cat.productivity_min_kwh_m2())) {
        f.verdict = Verdict::Pass;
        f.message = fmt::format("conventional productivity {} kWh/m2.yr meets {}",
                                fmt_num(spec.annual_productivity_kwh_m2), fmt_num(cat.productivity_min_kwh_m2()));
      } else {
        f.verdict = Verdict::Fail;
        f.message = fmt::format("conventional productivity {} kWh/m2.yr is below {}",
                                fmt_num(spec.annual_productivity_kwh_m2), fmt_num(cat.productivity_min_kwh_m2()));
        f.remediation = "select a system with a higher certified annual productivity";
        f.remedies.push_back({"annual_productivity_kwh_m2", cat.productivity_min_kwh_m2(), "kWh/m2.yr"});
      }
      out.push_back(std::move(f));
    }
  }

  {
    Finding f = make(rule::kCertification, subject);
    f.quantity = "certified";
    f.measured = spec.certified ? 1.0 : 0.0;
    f.required = 1.0;
    const char* body = spec.kind == WaterHeaterKind::Solar ? "technical approval of the solar system"
                                                           : "an approved manufacturing standard mark";
    if (spec.certified) {
      f.verdict = Verdict::Pass;
      f.message = fmt::format("{} water heater carries {}", to_string(spec.kind), body);
    } else {
      f.verdict = Verdict::Fail;
      f.message = fmt::format("{} water heater lacks {}", to_string(spec.kind), body);
      f.remediation = "install a certified appliance";
      f.remedies.push_back({"certified", 1.0, "flag"});
    }
    out.push_back(std::move(f));
  }

  if (spec.kind != WaterHeaterKind::Solar) {
    Finding f = make(rule::kWaterHeaterNote, subject);
    f.verdict = Verdict::Informational;
    f.quantity = "qualitative";
    f.message = spec.kind == WaterHeaterKind::Electric
                    ? "electric storage heaters also need a minimal capacity and a maximal cooling constant "
                      "depending on the number of main rooms, and off-peak servo-control; no numeric values "
                      "are published in this catalogue"
                    : "gas water heaters must be high-efficiency appliances; no numeric values are published "
                      "in this catalogue";
    out.push_back(std::move(f));
  }
  return out;
}

// ----------------------------------------------------------------- report

ComplianceReport compliance_report(const BuildingDescription& b, const RuleCatalogue& cat,
                                   const RuleOptions& options) {
  require_valid(b);

  ComplianceReport report;
  report.building = b.name;
  report.catalogue_version = cat.version();
  report.catalogue_checksum = cat.checksum();
  auto& out = report.findings;

  {
    Finding f = make(rule::kSite, b.name);
    f.verdict = Verdict::Informational;
    f.quantity = "vegetation";
    f.message = b.vegetation_note.empty() ? "no note on vegetation around the building"
                                          : "vegetation: " + b.vegetation_note;
    f.remediation = b.vegetation_note.empty() ? "plan vegetation around the building to shade and cool its surroundings"
                                              : "";
    out.push_back(std::move(f));
  }

  if (b.roof) {
    out.push_back(check_roof(*b.roof, cat));
    if (b.roof->insulation.is_mineral_wool() && !b.roof->insulation.humidity_protected &&
        b.roof->insulation.thickness_cm > 0.0) {
      out.push_back(humidity_warning(rule::kRoofHumidity, b.roof->id, b.roof->insulation));
    }
  } else {
    Finding f = make(rule::kRoofInsulation, b.name);
    f.verdict = Verdict::NotApplicable;
    f.quantity = "insulation_thickness_cm";
    f.message = "dwelling is not under a roof";
    out.push_back(std::move(f));
  }

  for (const auto& w : b.walls) {
    out.push_back(check_wall(w, cat));
    if (w.insulation.is_mineral_wool() && !w.insulation.humidity_protected && w.insulation.thickness_cm > 0.0) {
      out.push_back(humidity_warning(rule::kWallHumidity, w.id, w.insulation));
    }
  }
  for (const auto& w : b.windows) out.push_back(check_window(w, cat));

  auto vent = check_ventilation(b, cat, options);
  std::move(vent.begin(), vent.end(), std::back_inserter(out));

  if (b.water_heater) {
    auto dhw = check_water_heater(*b.water_heater, b.dwelling_type, cat);
    std::move(dhw.begin(), dhw.end(), std::back_inserter(out));
  } else {
    Finding f = make(rule::kCertification, "water_heater");
    f.verdict = Verdict::NotApplicable;
    f.quantity = "certified";
    f.message = "no domestic hot water system described";
    out.push_back(std::move(f));
  }

  std::stable_sort(out.begin(), out.end(), [](const Finding& a, const Finding& c) {
    if (a.rule_id != c.rule_id) return a.rule_id < c.rule_id;
    return a.subject < c.subject;
  });
  report.overall = report.count(Verdict::Fail) > 0 ? Verdict::Fail : Verdict::Pass;
  return report;
}

}  // namespace ecodom
