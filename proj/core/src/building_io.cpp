#include "ecodom/building_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <initializer_list>
#include <set>

namespace ecodom {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path, std::string_view source)
      : obj_(obj), path_(std::move(path)), source_(source) {
    if (!obj_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& what, const std::string& key = "") const {
    const std::string where = key.empty() ? path_ : path_ + "." + key;
    throw InputError(fmt::format("{}: {}: {}", source_, where, what));
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj_.items()) {
      if (!allowed.count(k)) fail("unknown key", k);
    }
  }

  bool has(const char* key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }

  const json& get(const char* key) const {
    if (!has(key)) fail("missing required key", key);
    return obj_.at(key);
  }

  double number(const char* key) const {
    const json& v = get(key);
    if (!v.is_number()) fail("expected a number", key);
    return v.get<double>();
  }
  double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  int integer(const char* key) const {
    const json& v = get(key);
    if (!v.is_number_integer()) fail("expected an integer", key);
    return v.get<int>();
  }

  std::string string(const char* key) const {
    const json& v = get(key);
    if (!v.is_string()) fail("expected a string", key);
    return v.get<std::string>();
  }
  std::string string_or(const char* key, std::string fallback) const {
    return has(key) ? string(key) : std::move(fallback);
  }

  bool boolean_or(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) fail("expected true or false", key);
    return v.get<bool>();
  }

  const json& array(const char* key) const {
    const json& v = get(key);
    if (!v.is_array()) fail("expected an array", key);
    return v;
  }

  ObjectReader child(const char* key) const { return ObjectReader(get(key), path_ + "." + key, source_); }
  ObjectReader element(const json& v, const char* key, std::size_t i) const {
    return ObjectReader(v, fmt::format("{}.{}[{}]", path_, key, i), source_);
  }

  template <typename E, typename Parse>
  E enumeration(const char* key, Parse parse) const {
    const auto s = string(key);
    auto e = parse(s);
    if (!e) fail(fmt::format("unknown value \"{}\"", s), key);
    return *e;
  }

  // `orientation` by name or `azimuth_deg` snapped to the nearest cardinal.
  Orientation orientation() const {
    if (has("orientation")) return enumeration<Orientation>("orientation", parse_orientation);
    if (has("azimuth_deg")) {
      const double az = number("azimuth_deg");
      if (!(az >= 0.0 && az < 360.0)) fail("must lie in [0, 360)", "azimuth_deg");
      return orientation_from_azimuth(az);
    }
    fail("missing 'orientation' or 'azimuth_deg'");
  }

 private:
  const json& obj_;
  std::string path_;
  std::string source_;
};

InsulationLayer read_insulation(const ObjectReader& r) {
  r.allow_only({"material", "conductivity", "thickness_cm", "humidity_protected"});
  InsulationLayer ins;
  ins.material = r.string_or("material", "none");
  ins.conductivity = r.number_or("conductivity", 0.041);
  ins.thickness_cm = r.number_or("thickness_cm", 0.0);
  ins.humidity_protected = r.boolean_or("humidity_protected", false);
  return ins;
}

Opening read_opening(const ObjectReader& r, bool external) {
  if (external) {
    r.allow_only({"id", "facade", "net_area_m2"});
  } else {
    r.allow_only({"id", "net_area_m2"});
  }
  Opening o;
  o.id = r.string("id");
  o.net_area_m2 = r.number("net_area_m2");
  if (external) o.facade_id = r.string("facade");
  return o;
}

ordered_json insulation_to_json(const InsulationLayer& ins) {
  return ordered_json{{"material", ins.material},
                      {"conductivity", ins.conductivity},
                      {"thickness_cm", ins.thickness_cm},
                      {"humidity_protected", ins.humidity_protected}};
}

}  // namespace

BuildingDescription parse_building(const json& doc, std::string_view source) {
  const ObjectReader r(doc, "$", source);
  if (!r.has("schema_version")) r.fail("missing required key", "schema_version");
  const json& sv = doc.at("schema_version");
  if (!sv.is_number_integer() || sv.get<int>() != kBuildingSchemaVersion) {
    r.fail(fmt::format("unsupported schema version {} (this build reads version {})", sv.dump(),
                       kBuildingSchemaVersion),
           "schema_version");
  }
  r.allow_only({"schema_version", "name", "location", "dwelling_type", "vegetation_note", "facades", "rooms",
                "roof", "walls", "windows", "facade_pairs", "water_heater", "thermal", "description"});

  BuildingDescription b;
  b.name = r.string("name");
  {
    const auto loc = r.child("location");
    loc.allow_only({"latitude", "longitude"});
    b.latitude = loc.number("latitude");
    b.longitude = loc.number("longitude");
  }
  b.dwelling_type = r.integer("dwelling_type");
  b.vegetation_note = r.string_or("vegetation_note", "");

  if (r.has("facades")) {
    const json& arr = r.array("facades");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto e = r.element(arr[i], "facades", i);
      e.allow_only({"id", "azimuth_deg", "orientation"});
      Facade f;
      f.id = e.string("id");
      f.azimuth_deg = e.has("azimuth_deg") ? e.number("azimuth_deg") : azimuth_of(e.orientation());
      b.facades.push_back(std::move(f));
    }
  }

  if (r.has("rooms")) {
    const json& arr = r.array("rooms");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto e = r.element(arr[i], "rooms", i);
      e.allow_only({"id", "kind", "floor_level", "under_roof", "facades", "external_openings",
                    "internal_openings"});
      Room room;
      room.id = e.string("id");
      const auto kind = e.string("kind");
      if (kind == "main") {
        room.kind = RoomKind::Main;
      } else if (kind == "service") {
        room.kind = RoomKind::Service;
      } else {
        e.fail(fmt::format("unknown value \"{}\" (main|service)", kind), "kind");
      }
      room.floor_level = e.has("floor_level") ? e.integer("floor_level") : 0;
      room.under_roof = e.boolean_or("under_roof", false);
      if (e.has("facades")) {
        const json& fa = e.array("facades");
        for (std::size_t k = 0; k < fa.size(); ++k) {
          const auto m = e.element(fa[k], "facades", k);
          m.allow_only({"facade", "gross_area_m2"});
          room.facades.push_back({m.string("facade"), m.number("gross_area_m2")});
        }
      }
      if (e.has("external_openings")) {
        const json& oa = e.array("external_openings");
        for (std::size_t k = 0; k < oa.size(); ++k) {
          room.external_openings.push_back(read_opening(e.element(oa[k], "external_openings", k), true));
        }
      }
      if (e.has("internal_openings")) {
        const json& oa = e.array("internal_openings");
        for (std::size_t k = 0; k < oa.size(); ++k) {
          room.internal_openings.push_back(read_opening(e.element(oa[k], "internal_openings", k), false));
        }
      }
      b.rooms.push_back(std::move(room));
    }
  }

  if (r.has("roof")) {
    const auto e = r.child("roof");
    e.allow_only({"id", "color", "attic", "area_m2", "structure_resistance", "insulation"});
    RoofSpec roof;
    roof.id = e.string_or("id", "roof");
    roof.color = e.enumeration<Color>("color", parse_color);
    roof.attic = e.has("attic") ? e.enumeration<AtticRegime>("attic", parse_attic) : AtticRegime::None;
    roof.area_m2 = e.number("area_m2");
    roof.structure_resistance = e.number_or("structure_resistance", 0.0);
    if (e.has("insulation")) roof.insulation = read_insulation(e.child("insulation"));
    b.roof = std::move(roof);
  }

  if (r.has("walls")) {
    const json& arr = r.array("walls");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto e = r.element(arr[i], "walls", i);
      e.allow_only({"id", "construction", "color", "orientation", "azimuth_deg", "area_m2", "overhang",
                    "insulation", "full_shading"});
      WallSpec w;
      w.id = e.string("id");
      w.construction = e.enumeration<WallConstruction>("construction", parse_construction);
      w.color = e.enumeration<Color>("color", parse_color);
      w.orientation = e.orientation();
      w.area_m2 = e.number("area_m2");
      if (e.has("overhang")) {
        const auto o = e.child("overhang");
        o.allow_only({"depth_m", "height_m"});
        w.overhang_depth_m = o.number_or("depth_m", 0.0);
        w.overhang_height_m = o.number_or("height_m", 0.0);
      }
      if (e.has("insulation")) w.insulation = read_insulation(e.child("insulation"));
      w.full_shading = e.boolean_or("full_shading", false);
      b.walls.push_back(std::move(w));
    }
  }

  if (r.has("windows")) {
    const json& arr = r.array("windows");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto e = r.element(arr[i], "windows", i);
      e.allow_only({"id", "orientation", "azimuth_deg", "glazed_area_m2", "height_m", "shading",
                    "mobile_shading"});
      WindowSpec w;
      w.id = e.string("id");
      w.orientation = e.orientation();
      w.glazed_area_m2 = e.number("glazed_area_m2");
      w.height_m = e.number("height_m");
      if (e.has("shading")) {
        const auto s = e.child("shading");
        s.allow_only({"case", "depth_m", "offset_m"});
        const int c = s.has("case") ? s.integer("case") : 2;
        if (c != 1 && c != 2) s.fail("expected 1 or 2", "case");
        w.shading_case = c == 1 ? ShadingCase::Case1 : ShadingCase::Case2;
        w.overhang_depth_m = s.number_or("depth_m", 0.0);
        w.offset_m = s.number_or("offset_m", 0.0);
      }
      w.mobile_shading = e.boolean_or("mobile_shading", false);
      b.windows.push_back(std::move(w));
    }
  }

  if (r.has("facade_pairs")) {
    const json& arr = r.array("facade_pairs");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto e = r.element(arr[i], "facade_pairs", i);
      e.allow_only({"id", "facade_1", "facade_2", "level"});
      FacadePair p;
      p.id = e.string("id");
      p.facade_1 = e.string("facade_1");
      p.facade_2 = e.string("facade_2");
      if (e.has("level")) p.level = e.integer("level");
      b.facade_pairs.push_back(std::move(p));
    }
  }

  if (r.has("water_heater")) {
    const auto e = r.child("water_heater");
    e.allow_only({"kind", "collector_area_m2", "tank_volume_l", "annual_productivity_kwh_m2", "certified"});
    WaterHeaterSpec h;
    h.kind = e.enumeration<WaterHeaterKind>("kind", parse_water_heater_kind);
    h.collector_area_m2 = e.number_or("collector_area_m2", 0.0);
    h.tank_volume_l = e.number_or("tank_volume_l", 0.0);
    h.annual_productivity_kwh_m2 = e.number_or("annual_productivity_kwh_m2", 0.0);
    h.certified = e.boolean_or("certified", false);
    b.water_heater = h;
  }

  if (r.has("thermal")) {
    const auto e = r.child("thermal");
    e.allow_only({"floor_area_m2", "ceiling_height_m", "mass", "window_resistance", "window_shgc",
                  "internal_gains_w"});
    ThermalProperties t;
    t.floor_area_m2 = e.number("floor_area_m2");
    t.ceiling_height_m = e.number_or("ceiling_height_m", 2.5);
    t.mass = e.has("mass") ? e.enumeration<MassClass>("mass", parse_mass_class) : MassClass::Heavy;
    t.window_resistance = e.number_or("window_resistance", 0.0);
    t.window_shgc = e.number_or("window_shgc", 0.8);
    t.internal_gains_w = e.number_or("internal_gains_w", 0.0);
    b.thermal = t;
  }
  return b;
}

BuildingDescription load_building(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open building description '{}'", path.string()));
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InputError(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
  }
  BuildingDescription b = parse_building(doc, path.string());
  require_valid(b);
  return b;
}

ordered_json building_to_json(const BuildingDescription& b) {
  ordered_json doc;
  doc["schema_version"] = kBuildingSchemaVersion;
  doc["name"] = b.name;
  doc["location"] = ordered_json{{"latitude", b.latitude}, {"longitude", b.longitude}};
  doc["dwelling_type"] = b.dwelling_type;
  doc["vegetation_note"] = b.vegetation_note;

  ordered_json facades = ordered_json::array();
  for (const auto& f : b.facades) facades.push_back(ordered_json{{"id", f.id}, {"azimuth_deg", f.azimuth_deg}});
  doc["facades"] = std::move(facades);

  ordered_json rooms = ordered_json::array();
  for (const auto& r : b.rooms) {
    ordered_json j;
    j["id"] = r.id;
    j["kind"] = r.kind == RoomKind::Main ? "main" : "service";
    j["floor_level"] = r.floor_level;
    j["under_roof"] = r.under_roof;
    ordered_json mem = ordered_json::array();
    for (const auto& m : r.facades) mem.push_back(ordered_json{{"facade", m.facade_id}, {"gross_area_m2", m.gross_area_m2}});
    j["facades"] = std::move(mem);
    ordered_json ext = ordered_json::array();
    for (const auto& o : r.external_openings) {
      ext.push_back(ordered_json{{"id", o.id}, {"facade", o.facade_id.value_or("")}, {"net_area_m2", o.net_area_m2}});
    }
    j["external_openings"] = std::move(ext);
    ordered_json in = ordered_json::array();
    for (const auto& o : r.internal_openings) in.push_back(ordered_json{{"id", o.id}, {"net_area_m2", o.net_area_m2}});
    j["internal_openings"] = std::move(in);
    rooms.push_back(std::move(j));
  }
  doc["rooms"] = std::move(rooms);

  if (b.roof) {
    doc["roof"] = ordered_json{{"id", b.roof->id},
                               {"color", to_string(b.roof->color)},
                               {"attic", to_string(b.roof->attic)},
                               {"area_m2", b.roof->area_m2},
                               {"structure_resistance", b.roof->structure_resistance},
                               {"insulation", insulation_to_json(b.roof->insulation)}};
  }

  ordered_json walls = ordered_json::array();
  for (const auto& w : b.walls) {
    walls.push_back(ordered_json{
        {"id", w.id},
        {"construction", to_string(w.construction)},
        {"color", to_string(w.color)},
        {"orientation", to_string(w.orientation)},
        {"area_m2", w.area_m2},
        {"overhang", ordered_json{{"depth_m", w.overhang_depth_m}, {"height_m", w.overhang_height_m}}},
        {"insulation", insulation_to_json(w.insulation)},
        {"full_shading", w.full_shading}});
  }
  doc["walls"] = std::move(walls);

  ordered_json windows = ordered_json::array();
  for (const auto& w : b.windows) {
    windows.push_back(ordered_json{
        {"id", w.id},
        {"orientation", to_string(w.orientation)},
        {"glazed_area_m2", w.glazed_area_m2},
        {"height_m", w.height_m},
        {"shading", ordered_json{{"case", w.shading_case == ShadingCase::Case1 ? 1 : 2},
                                 {"depth_m", w.overhang_depth_m},
                                 {"offset_m", w.offset_m}}},
        {"mobile_shading", w.mobile_shading}});
  }
  doc["windows"] = std::move(windows);

  ordered_json pairs = ordered_json::array();
  for (const auto& p : b.facade_pairs) {
    ordered_json j{{"id", p.id}, {"facade_1", p.facade_1}, {"facade_2", p.facade_2}};
    if (p.level) j["level"] = *p.level;
    pairs.push_back(std::move(j));
  }
  doc["facade_pairs"] = std::move(pairs);

  if (b.water_heater) {
    const auto& h = *b.water_heater;
    doc["water_heater"] = ordered_json{{"kind", to_string(h.kind)},
                                       {"collector_area_m2", h.collector_area_m2},
                                       {"tank_volume_l", h.tank_volume_l},
                                       {"annual_productivity_kwh_m2", h.annual_productivity_kwh_m2},
                                       {"certified", h.certified}};
  }
  if (b.thermal) {
    const auto& t = *b.thermal;
    doc["thermal"] = ordered_json{{"floor_area_m2", t.floor_area_m2},
                                  {"ceiling_height_m", t.ceiling_height_m},
                                  {"mass", to_string(t.mass)},
                                  {"window_resistance", t.window_resistance},
                                  {"window_shgc", t.window_shgc},
                                  {"internal_gains_w", t.internal_gains_w}};
  }
  return doc;
}

}  // namespace ecodom
