#include "ecodom/catalogue.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "ecodom/error.hpp"

namespace ecodom {

namespace detail {
std::string_view embedded_catalogue_json();
}

namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "ecodom-catalogue";
constexpr int kFormatVersion = 1;

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw InputError(fmt::format("{}: catalogue field '{}': {}", source_, path, what));
  }

  const json& at(const json& obj, const std::string& key, const std::string& path) const {
    if (!obj.is_object() || !obj.contains(key)) fail(path + "." + key, "missing");
    return obj.at(key);
  }

  double number(const json& obj, const std::string& key, const std::string& path) const {
    const json& v = at(obj, key, path);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    const double d = v.get<double>();
    if (d < 0.0) fail(path + "." + key, "must be >= 0");
    return d;
  }

 private:
  std::string source_;
};

Color color_key(const Reader& r, const std::string& key, const std::string& path) {
  auto c = parse_color(key);
  if (!c) r.fail(path + "." + key, "unknown colour");
  return *c;
}

ConstructionTable read_construction_table(const Reader& r, const json& t, const std::string& path) {
  if (!t.is_object()) r.fail(path, "expected an object");
  ConstructionTable out;
  for (const auto& [ckey, columns] : t.items()) {
    auto construction = parse_construction(ckey);
    if (!construction) r.fail(path + "." + ckey, "unknown wall construction");
    if (!columns.is_object()) r.fail(path + "." + ckey, "expected an object");
    ColorColumns cols;
    for (const auto& [colkey, row] : columns.items()) {
      const std::string rp = path + "." + ckey + "." + colkey;
      const Color color = color_key(r, colkey, path + "." + ckey);
      OrientationRow orow;
      for (Orientation o : {Orientation::East, Orientation::South, Orientation::West, Orientation::North}) {
        orow[o] = r.number(row, std::string(to_string(o)), rp);
      }
      cols[color] = std::move(orow);
    }
    out[*construction] = std::move(cols);
  }
  return out;
}

std::map<Color, RoofRow> read_roof_block(const Reader& r, const json& block, const std::string& path) {
  std::map<Color, RoofRow> out;
  for (Color c : {Color::Light, Color::Medium, Color::Dark}) {
    const std::string key(to_string(c));
    const json& row = r.at(block, key, path);
    out[c] = RoofRow{r.number(row, "polystyrene", path + "." + key),
                     r.number(row, "polyurethane", path + "." + key)};
  }
  return out;
}

}  // namespace

std::string RuleCatalogue::checksum_of(const json& tables) {
  const std::string canonical = tables.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("fnv1a64:{:016x}", h);
}

RuleCatalogue RuleCatalogue::from_json(const json& doc, std::string_view source) {
  const Reader r(source);
  if (!doc.is_object()) r.fail("$", "expected an object");
  const json& format = r.at(doc, "format", "$");
  if (!format.is_string() || format.get<std::string>() != kFormat) {
    r.fail("$.format", fmt::format("expected \"{}\"", kFormat));
  }
  const json& fv = r.at(doc, "format_version", "$");
  if (!fv.is_number_integer() || fv.get<int>() != kFormatVersion) {
    r.fail("$.format_version", fmt::format("unsupported version (expected {})", kFormatVersion));
  }

  RuleCatalogue cat;
  const json& version = r.at(doc, "catalogue_version", "$");
  if (!version.is_string()) r.fail("$.catalogue_version", "expected a string");
  cat.version_ = version.get<std::string>();
  if (doc.contains("region") && doc["region"].is_string()) cat.region_ = doc["region"].get<std::string>();

  const json& tables = r.at(doc, "tables", "$");
  const std::string actual = checksum_of(tables);
  if (doc.contains("checksum")) {
    const json& declared = doc["checksum"];
    if (!declared.is_string() || declared.get<std::string>() != actual) {
      r.fail("$.checksum", fmt::format("mismatch: tables hash to {}", actual));
    }
  }
  cat.checksum_ = actual;

  const std::string t = "$.tables";
  const json& lambdas = r.at(tables, "reference_conductivity_w_mk", t);
  cat.lambda_polystyrene_ = r.number(lambdas, "polystyrene", t + ".reference_conductivity_w_mk");
  cat.lambda_polyurethane_ = r.number(lambdas, "polyurethane", t + ".reference_conductivity_w_mk");
  if (!(cat.lambda_polyurethane_ > 0.0 && cat.lambda_polyurethane_ < cat.lambda_polystyrene_)) {
    r.fail(t + ".reference_conductivity_w_mk", "need 0 < polyurethane < polystyrene");
  }
  cat.lambda_wall_reference_ = r.number(tables, "wall_insulation_reference_conductivity_w_mk", t);
  if (!(cat.lambda_wall_reference_ > 0.0)) {
    r.fail(t + ".wall_insulation_reference_conductivity_w_mk", "must be > 0");
  }

  const json& roof = r.at(tables, "roof_insulation_cm", t);
  cat.roof_simple_ = read_roof_block(r, r.at(roof, "simple", t + ".roof_insulation_cm"),
                                     t + ".roof_insulation_cm.simple");
  cat.roof_attic_ = read_roof_block(r, r.at(roof, "well_ventilated_attic", t + ".roof_insulation_cm"),
                                    t + ".roof_insulation_cm.well_ventilated_attic");

  const json& base = r.at(tables, "wall_base_resistance_m2k_w", t);
  for (const auto& [key, value] : base.items()) {
    auto c = parse_construction(key);
    if (!c || !value.is_number()) r.fail(t + ".wall_base_resistance_m2k_w." + key, "bad entry");
    cat.base_resistance_[*c] = value.get<double>();
  }

  cat.overhang_ = read_construction_table(r, r.at(tables, "overhang_min_ratio", t), t + ".overhang_min_ratio");
  cat.wall_insulation_ =
      read_construction_table(r, r.at(tables, "wall_insulation_cm", t), t + ".wall_insulation_cm");

  const json& window = r.at(tables, "window_min_ratio", t);
  for (Orientation o : {Orientation::East, Orientation::South, Orientation::West, Orientation::North}) {
    cat.window_ratio_[o] = r.number(window, std::string(to_string(o)), t + ".window_min_ratio");
  }

  cat.porosity_min_ = r.number(tables, "porosity_min", t);

  const json& bands = r.at(tables, "solar_collector_min_area_m2", t);
  if (!bands.is_array() || bands.empty()) r.fail(t + ".solar_collector_min_area_m2", "expected a non-empty array");
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const std::string bp = fmt::format("{}.solar_collector_min_area_m2[{}]", t, i);
    const json& b = bands[i];
    CollectorBand band;
    if (b.contains("label") && b["label"].is_string()) band.label = b["label"].get<std::string>();
    band.min_main_rooms = static_cast<int>(r.number(b, "min_main_rooms", bp));
    const json& mx = r.at(b, "max_main_rooms", bp);
    if (!mx.is_null()) band.max_main_rooms = static_cast<int>(r.number(b, "max_main_rooms", bp));
    band.area_m2 = r.number(b, "area_m2", bp);
    cat.collector_.push_back(std::move(band));
  }

  const json& storage = r.at(tables, "solar_storage_l_per_m2", t);
  cat.storage_min_ = r.number(storage, "min", t + ".solar_storage_l_per_m2");
  cat.storage_max_ = r.number(storage, "max", t + ".solar_storage_l_per_m2");
  if (cat.storage_max_ < cat.storage_min_) r.fail(t + ".solar_storage_l_per_m2", "max < min");
  cat.productivity_min_ = r.number(tables, "solar_productivity_min_kwh_m2_yr", t);
  return cat;
}

RuleCatalogue RuleCatalogue::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open catalogue '{}'", path.string()));
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InputError(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
  }
  return from_json(doc, path.string());
}

const RuleCatalogue& RuleCatalogue::builtin() {
  static const RuleCatalogue cat =
      from_json(json::parse(detail::embedded_catalogue_json()), "<builtin catalogue>");
  return cat;
}

const RoofRow& RuleCatalogue::roof_row(Color color, bool well_ventilated_attic) const {
  return well_ventilated_attic ? roof_attic_.at(color) : roof_simple_.at(color);
}

std::optional<double> RuleCatalogue::lookup(const ConstructionTable& t, WallConstruction c, Color color,
                                            Orientation o) const {
  auto row = t.find(c);
  if (row == t.end()) {
    auto rc = base_resistance_.find(c);
    if (rc == base_resistance_.end()) return std::nullopt;
    for (auto it = t.begin(); it != t.end(); ++it) {
      auto other = base_resistance_.find(it->first);
      if (other != base_resistance_.end() && other->second == rc->second) {
        row = it;
        break;
      }
    }
    if (row == t.end()) return std::nullopt;
  }
  auto col = row->second.find(color);
  if (col == row->second.end()) return std::nullopt;
  return col->second.at(o);
}

std::optional<double> RuleCatalogue::overhang_ratio(WallConstruction c, Color color, Orientation o) const {
  return lookup(overhang_, c, color, o);
}

std::optional<double> RuleCatalogue::wall_insulation_cm(WallConstruction c, Color color,
                                                        Orientation o) const {
  return lookup(wall_insulation_, c, color, o);
}

const CollectorBand& RuleCatalogue::collector_band(int main_rooms) const {
  for (const auto& b : collector_) {
    if (main_rooms >= b.min_main_rooms && (!b.max_main_rooms || main_rooms <= *b.max_main_rooms)) {
      return b;
    }
  }
  throw std::out_of_range(fmt::format("no collector-area band for {} main rooms", main_rooms));
}

}  // namespace ecodom
