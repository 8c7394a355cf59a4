#include "ecodom/building.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ecodom {

// ---------------------------------------------------------------- errors

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
    : InputError(fmt::format("{}:{}: {}", source, line, what)),
      source_(std::move(source)),
      line_(line) {}

std::string ValidationError::to_string() const {
  return fmt::format("{}: {}: {}", entity, field, message);
}

namespace {

std::string join_errors(const std::vector<ValidationError>& errors) {
  std::string out = fmt::format("building description is invalid ({} error{})", errors.size(),
                                errors.size() == 1 ? "" : "s");
  for (const auto& e : errors) out += "\n  " + e.to_string();
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

ValidationFailed::ValidationFailed(std::vector<ValidationError> errors)
    : InputError(join_errors(errors)), errors_(std::move(errors)) {}

// ------------------------------------------------------------ enumerations

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::North: return "north";
    case Orientation::East: return "east";
    case Orientation::South: return "south";
    case Orientation::West: return "west";
  }
  return "north";
}

std::optional<Orientation> parse_orientation(std::string_view s) {
  const auto l = lower(s);
  if (l == "north" || l == "n") return Orientation::North;
  if (l == "east" || l == "e") return Orientation::East;
  if (l == "south" || l == "s") return Orientation::South;
  if (l == "west" || l == "w") return Orientation::West;
  return std::nullopt;
}

double azimuth_of(Orientation o) {
  switch (o) {
    case Orientation::North: return 0.0;
    case Orientation::East: return 90.0;
    case Orientation::South: return 180.0;
    case Orientation::West: return 270.0;
  }
  return 0.0;
}

Orientation opposite(Orientation o) {
  switch (o) {
    case Orientation::North: return Orientation::South;
    case Orientation::East: return Orientation::West;
    case Orientation::South: return Orientation::North;
    case Orientation::West: return Orientation::East;
  }
  return Orientation::North;
}

Orientation orientation_from_azimuth(double az) {
  if (!std::isfinite(az) || az < 0.0 || az >= 360.0) {
    throw std::out_of_range(fmt::format("azimuth {} outside [0, 360)", az));
  }
  if (az >= 45.0 && az <= 135.0) return Orientation::East;
  if (az > 135.0 && az <= 225.0) return Orientation::South;
  if (az > 225.0 && az < 315.0) return Orientation::West;
  return Orientation::North;
}

std::string_view to_string(Color c) {
  switch (c) {
    case Color::Light: return "light";
    case Color::Medium: return "medium";
    case Color::Dark: return "dark";
  }
  return "light";
}

std::optional<Color> parse_color(std::string_view s) {
  const auto l = lower(s);
  if (l == "light") return Color::Light;
  if (l == "medium") return Color::Medium;
  if (l == "dark") return Color::Dark;
  return std::nullopt;
}

double absorptivity(Color c) {
  switch (c) {
    case Color::Light: return 0.4;
    case Color::Medium: return 0.6;
    case Color::Dark: return 0.8;
  }
  return 0.8;
}

bool InsulationLayer::is_mineral_wool() const {
  const auto l = lower(material);
  return l.find("mineral") != std::string::npos && l.find("wool") != std::string::npos;
}

std::string_view to_string(AtticRegime a) {
  switch (a) {
    case AtticRegime::None: return "none";
    case AtticRegime::ClosedOrBarelyVentilated: return "closed_or_barely_ventilated";
    case AtticRegime::WellVentilated: return "well_ventilated";
  }
  return "none";
}

std::optional<AtticRegime> parse_attic(std::string_view s) {
  const auto l = lower(s);
  if (l == "none") return AtticRegime::None;
  if (l == "closed_or_barely_ventilated" || l == "closed") return AtticRegime::ClosedOrBarelyVentilated;
  if (l == "well_ventilated") return AtticRegime::WellVentilated;
  return std::nullopt;
}

std::string_view to_string(WallConstruction w) {
  switch (w) {
    case WallConstruction::PouredConcrete15: return "poured_concrete_15";
    case WallConstruction::Concrete20: return "concrete_20";
    case WallConstruction::HollowConcreteBlock: return "hollow_concrete_block";
    case WallConstruction::Wood: return "wood";
  }
  return "wood";
}

std::optional<WallConstruction> parse_construction(std::string_view s) {
  const auto l = lower(s);
  if (l == "poured_concrete_15") return WallConstruction::PouredConcrete15;
  if (l == "concrete_20") return WallConstruction::Concrete20;
  if (l == "hollow_concrete_block") return WallConstruction::HollowConcreteBlock;
  if (l == "wood") return WallConstruction::Wood;
  return std::nullopt;
}

double base_resistance(WallConstruction w) {
  switch (w) {
    case WallConstruction::PouredConcrete15:
    case WallConstruction::Concrete20: return 0.1;
    case WallConstruction::HollowConcreteBlock: return 0.2;
    case WallConstruction::Wood: return 0.5;
  }
  return 0.1;
}

std::string_view to_string(WaterHeaterKind k) {
  switch (k) {
    case WaterHeaterKind::Solar: return "solar";
    case WaterHeaterKind::Electric: return "electric";
    case WaterHeaterKind::Gas: return "gas";
  }
  return "solar";
}

std::optional<WaterHeaterKind> parse_water_heater_kind(std::string_view s) {
  const auto l = lower(s);
  if (l == "solar") return WaterHeaterKind::Solar;
  if (l == "electric") return WaterHeaterKind::Electric;
  if (l == "gas") return WaterHeaterKind::Gas;
  return std::nullopt;
}

std::string_view to_string(MassClass m) { return m == MassClass::Light ? "light" : "heavy"; }

std::optional<MassClass> parse_mass_class(std::string_view s) {
  const auto l = lower(s);
  if (l == "light") return MassClass::Light;
  if (l == "heavy") return MassClass::Heavy;
  return std::nullopt;
}

// ------------------------------------------------------------- geometry

double WallSpec::overhang_ratio() const {
  if (overhang_depth_m <= 0.0 || overhang_height_m <= 0.0) return 0.0;
  return overhang_depth_m / overhang_height_m;
}

double WindowSpec::overhang_ratio() const {
  const double denom = shading_case == ShadingCase::Case1 ? 2.0 * offset_m + height_m : height_m;
  if (overhang_depth_m <= 0.0 || denom <= 0.0) return 0.0;
  return overhang_depth_m / denom;
}

double WindowSpec::depth_for_ratio(double ratio) const {
  const double denom = shading_case == ShadingCase::Case1 ? 2.0 * offset_m + height_m : height_m;
  return ratio * denom;
}

double Room::gross_area_on(std::string_view facade_id) const {
  double sum = 0.0;
  for (const auto& m : facades) {
    if (m.facade_id == facade_id) sum += m.gross_area_m2;
  }
  return sum;
}

double Room::opening_area_on(std::string_view facade_id) const {
  double sum = 0.0;
  for (const auto& o : external_openings) {
    if (o.facade_id && *o.facade_id == facade_id) sum += o.net_area_m2;
  }
  return sum;
}

double Room::internal_opening_area() const {
  double sum = 0.0;
  for (const auto& o : internal_openings) sum += o.net_area_m2;
  return sum;
}

bool Room::touches(std::string_view facade_id) const {
  return std::any_of(facades.begin(), facades.end(),
                     [&](const FacadeMembership& m) { return m.facade_id == facade_id; });
}

const Facade* BuildingDescription::find_facade(std::string_view id) const {
  for (const auto& f : facades) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

// ------------------------------------------------------------ validation

namespace {

class Collector {
 public:
  void add(std::string entity, std::string field, std::string message) {
    errors_.push_back({std::move(entity), std::move(field), std::move(message)});
  }

  // Records `id` in the global namespace of entity ids.
  void unique(const std::string& kind, const std::string& id) {
    if (id.empty()) {
      add(kind, "id", "id must not be empty");
    } else if (!ids_.insert(kind + ":" + id).second) {
      add(fmt::format("{} '{}'", kind, id), "id", "duplicated id");
    }
  }

  void finite(const std::string& entity, const std::string& field, double v) {
    if (!std::isfinite(v)) add(entity, field, "must be a finite number");
  }

  std::vector<ValidationError> take() { return std::move(errors_); }

 private:
  std::vector<ValidationError> errors_;
  std::set<std::string> ids_;
};

void check_insulation(Collector& c, const std::string& entity, const InsulationLayer& ins) {
  if (!(ins.conductivity > 0.0) || !std::isfinite(ins.conductivity)) {
    c.add(entity, "insulation.conductivity", "must be > 0");
  }
  if (!(ins.thickness_cm >= 0.0) || !std::isfinite(ins.thickness_cm)) {
    c.add(entity, "insulation.thickness_cm", "must be >= 0");
  }
}

}  // namespace

std::vector<ValidationError> validate(const BuildingDescription& b) {
  Collector c;
  const std::string bentity = fmt::format("building '{}'", b.name);

  if (!(b.latitude >= -90.0 && b.latitude <= 90.0)) c.add(bentity, "latitude", "must lie in [-90, 90]");
  if (!(b.longitude >= -180.0 && b.longitude <= 180.0)) {
    c.add(bentity, "longitude", "must lie in [-180, 180]");
  }
  if (b.dwelling_type < 1) c.add(bentity, "dwelling_type", "must be >= 1 main room");
  if (b.rooms.empty()) c.add(bentity, "rooms", "a dwelling needs at least one room");

  for (const auto& f : b.facades) {
    c.unique("facade", f.id);
    if (!(f.azimuth_deg >= 0.0 && f.azimuth_deg < 360.0)) {
      c.add(fmt::format("facade '{}'", f.id), "azimuth_deg", "must lie in [0, 360)");
    }
  }

  std::set<std::string> opening_ids;
  for (const auto& r : b.rooms) {
    c.unique("room", r.id);
    const std::string rentity = fmt::format("room '{}'", r.id);
    double main_area = 0.0;
    for (const auto& m : r.facades) {
      if (!b.find_facade(m.facade_id)) {
        c.add(rentity, "facades", fmt::format("unknown facade '{}'", m.facade_id));
      }
      if (!(m.gross_area_m2 > 0.0) || !std::isfinite(m.gross_area_m2)) {
        c.add(rentity, "facades.gross_area_m2", fmt::format("area on facade '{}' must be > 0", m.facade_id));
      } else {
        main_area += m.gross_area_m2;
      }
    }
    if (r.kind == RoomKind::Main && !(main_area > 0.0)) {
      c.add(rentity, "facades", "a main room must have positive gross area on at least one facade");
    }
    auto check_opening = [&](const Opening& o, bool external) {
      const std::string oentity = fmt::format("opening '{}'", o.id);
      if (o.id.empty()) {
        c.add(oentity, "id", "id must not be empty");
      } else if (!opening_ids.insert(o.id).second) {
        c.add(oentity, "id", "duplicated id");
      }
      if (!(o.net_area_m2 >= 0.0) || !std::isfinite(o.net_area_m2)) {
        c.add(oentity, "net_area_m2", "must be >= 0");
      }
      if (external) {
        if (!o.facade_id) {
          c.add(oentity, "facade", "external opening without facade");
        } else if (!b.find_facade(*o.facade_id)) {
          c.add(oentity, "facade", fmt::format("unknown facade '{}'", *o.facade_id));
        } else if (!r.touches(*o.facade_id)) {
          c.add(oentity, "facade",
                fmt::format("room '{}' has no wall on facade '{}'", r.id, *o.facade_id));
        }
      } else if (o.facade_id) {
        c.add(oentity, "facade", "internal opening must not reference a facade");
      }
    };
    for (const auto& o : r.external_openings) check_opening(o, true);
    for (const auto& o : r.internal_openings) check_opening(o, false);
  }

  if (b.roof) {
    const std::string e = fmt::format("roof '{}'", b.roof->id);
    if (!(b.roof->area_m2 > 0.0) || !std::isfinite(b.roof->area_m2)) c.add(e, "area_m2", "must be > 0");
    if (!(b.roof->structure_resistance >= 0.0)) c.add(e, "structure_resistance", "must be >= 0");
    check_insulation(c, e, b.roof->insulation);
  }

  for (const auto& w : b.walls) {
    c.unique("wall", w.id);
    const std::string e = fmt::format("wall '{}'", w.id);
    if (!(w.area_m2 > 0.0) || !std::isfinite(w.area_m2)) c.add(e, "area_m2", "must be > 0");
    if (!(w.overhang_depth_m >= 0.0) || !std::isfinite(w.overhang_depth_m)) {
      c.add(e, "overhang_depth_m", "must be >= 0");
    }
    if (!(w.overhang_height_m >= 0.0) || !std::isfinite(w.overhang_height_m)) {
      c.add(e, "overhang_height_m", "must be >= 0");
    } else if (w.overhang_depth_m > 0.0 && !(w.overhang_height_m > 0.0)) {
      c.add(e, "overhang_height_m", "overhang geometry: h must be > 0 when d > 0");
    }
    check_insulation(c, e, w.insulation);
  }

  for (const auto& w : b.windows) {
    c.unique("window", w.id);
    const std::string e = fmt::format("window '{}'", w.id);
    if (!(w.glazed_area_m2 > 0.0) || !std::isfinite(w.glazed_area_m2)) {
      c.add(e, "glazed_area_m2", "must be > 0");
    }
    if (!(w.height_m > 0.0) || !std::isfinite(w.height_m)) c.add(e, "height_m", "must be > 0");
    if (!(w.overhang_depth_m >= 0.0) || !std::isfinite(w.overhang_depth_m)) {
      c.add(e, "overhang_depth_m", "must be >= 0");
    }
    if (!(w.offset_m >= 0.0) || !std::isfinite(w.offset_m)) c.add(e, "offset_m", "must be >= 0");
    if (w.shading_case == ShadingCase::Case2 && w.offset_m != 0.0) {
      c.add(e, "offset_m", "offset is only meaningful for shading case 1");
    }
  }

  for (const auto& p : b.facade_pairs) {
    c.unique("facade_pair", p.id);
    const std::string e = fmt::format("facade_pair '{}'", p.id);
    const Facade* f1 = b.find_facade(p.facade_1);
    const Facade* f2 = b.find_facade(p.facade_2);
    if (!f1) c.add(e, "facade_1", fmt::format("unknown facade '{}'", p.facade_1));
    if (!f2) c.add(e, "facade_2", fmt::format("unknown facade '{}'", p.facade_2));
    if (f1 && f2 && f1->azimuth_deg >= 0.0 && f1->azimuth_deg < 360.0 && f2->azimuth_deg >= 0.0 &&
        f2->azimuth_deg < 360.0) {
      if (opposite(f1->orientation()) != f2->orientation()) {
        c.add(e, "facade_2",
              fmt::format("facades '{}' ({}) and '{}' ({}) are not opposite", p.facade_1,
                          to_string(f1->orientation()), p.facade_2, to_string(f2->orientation())));
      }
      const auto por = pair_porosity(b, p);
      if (!(por.sp1 > 0.0)) c.add(e, "sp1", "no main-room facade area on facade 1");
      if (!(por.sp2 > 0.0)) c.add(e, "sp2", "no main-room facade area on facade 2");
    }
  }

  if (b.water_heater) {
    const auto& h = *b.water_heater;
    const std::string e = "water_heater";
    if (!(h.collector_area_m2 >= 0.0)) c.add(e, "collector_area_m2", "must be >= 0");
    if (!(h.tank_volume_l >= 0.0)) c.add(e, "tank_volume_l", "must be >= 0");
    if (!(h.annual_productivity_kwh_m2 >= 0.0)) c.add(e, "annual_productivity_kwh_m2", "must be >= 0");
  }

  if (b.thermal) {
    const auto& t = *b.thermal;
    const std::string e = "thermal";
    if (!(t.floor_area_m2 > 0.0)) c.add(e, "floor_area_m2", "must be > 0");
    if (!(t.ceiling_height_m > 0.0)) c.add(e, "ceiling_height_m", "must be > 0");
    if (!(t.window_resistance >= 0.0)) c.add(e, "window_resistance", "must be >= 0");
    if (!(t.window_shgc >= 0.0 && t.window_shgc <= 1.0)) c.add(e, "window_shgc", "must lie in [0, 1]");
    if (!(t.internal_gains_w >= 0.0)) c.add(e, "internal_gains_w", "must be >= 0");
  }

  return c.take();
}

void require_valid(const BuildingDescription& building) {
  auto errors = validate(building);
  if (!errors.empty()) throw ValidationFailed(std::move(errors));
}

// ------------------------------------------------------------- porosity

PairPorosity porosity(const PorosityInputs& in) {
  PairPorosity p;
  p.so1 = in.so1;
  p.so2 = in.so2;
  p.sp1 = in.sp1;
  p.sp2 = in.sp2;
  p.sp = (in.sp1 + in.sp2) / 2.0;
  if (!(p.sp > 0.0)) throw std::domain_error("mean facade area Sp is zero");
  p.p1 = p.so1 / p.sp;
  p.p2 = p.so2 / p.sp;
  return p;
}

PairPorosity pair_porosity(const BuildingDescription& b, const FacadePair& pair) {
  PorosityInputs in;
  double si1 = 0.0;
  double si2 = 0.0;
  for (const auto& r : b.rooms) {
    if (r.kind != RoomKind::Main) continue;
    if (pair.level && r.floor_level != *pair.level) continue;
    const bool on1 = r.touches(pair.facade_1);
    const bool on2 = r.touches(pair.facade_2);
    const double so1 = r.opening_area_on(pair.facade_1);
    const double so2 = r.opening_area_on(pair.facade_2);
    in.so1 += so1;
    in.so2 += so2;
    in.sp1 += r.gross_area_on(pair.facade_1);
    in.sp2 += r.gross_area_on(pair.facade_2);
    if (on1 && on2) {
      si1 += so1;
      si2 += so2;
    } else if (on1) {
      si1 += r.internal_opening_area();
    } else if (on2) {
      si2 += r.internal_opening_area();
    }
  }
  PairPorosity p;
  if (in.sp1 + in.sp2 > 0.0) {
    p = porosity(in);
  } else {
    p.so1 = in.so1;
    p.so2 = in.so2;
  }
  p.pair_id = pair.id;
  p.facade_1 = pair.facade_1;
  p.facade_2 = pair.facade_2;
  p.si1 = si1;
  p.si2 = si2;
  return p;
}

std::vector<PairPorosity> facade_porosities(const BuildingDescription& b) {
  if (b.facade_pairs.empty()) throw std::invalid_argument("no facade pair declared");
  std::vector<PairPorosity> out;
  out.reserve(b.facade_pairs.size());
  for (const auto& pair : b.facade_pairs) {
    auto p = pair_porosity(b, pair);
    if (!(p.sp > 0.0)) throw std::domain_error(fmt::format("facade pair '{}': Sp is zero", pair.id));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace ecodom
