#pragma once

// Independent reference implementations and transcribed tables shared by the
// unit tests and the acceptance runner. Nothing here calls into the library
// code it is used to check.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ecodom/building.hpp"

namespace ecodom::testing {

inline std::filesystem::path data_dir() { return ECODOM_DATA_DIR; }
inline std::filesystem::path fixture(const std::string& name) { return data_dir() / "fixtures" / name; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- tables
// Transcribed by hand from the printed ECODOM tables, cell by cell.

struct RoofCell {
  Color color;
  bool ventilated_attic;
  double polystyrene_cm;
  double polyurethane_cm;
};

inline const std::vector<RoofCell>& roof_table() {
  static const std::vector<RoofCell> t = {
      {Color::Light, false, 5, 4},  {Color::Medium, false, 8, 6}, {Color::Dark, false, 10, 8},
      {Color::Light, true, 0, 0},   {Color::Medium, true, 2, 0},  {Color::Dark, true, 2, 0},
  };
  return t;
}

struct WallCell {
  WallConstruction construction;
  Color color;
  Orientation orientation;
  double value;
};

// Columns are printed East, South, West, North for light then medium.
inline std::vector<WallCell> expand(WallConstruction c, const double (&light)[4], const double (&medium)[4]) {
  const Orientation order[4] = {Orientation::East, Orientation::South, Orientation::West, Orientation::North};
  std::vector<WallCell> out;
  for (int i = 0; i < 4; ++i) out.push_back({c, Color::Light, order[i], light[i]});
  for (int i = 0; i < 4; ++i) out.push_back({c, Color::Medium, order[i], medium[i]});
  return out;
}

inline const std::vector<WallCell>& overhang_table() {
  static const std::vector<WallCell> t = [] {
    std::vector<WallCell> v;
    for (auto& c : expand(WallConstruction::PouredConcrete15, {0.4, 0.2, 0.7, 0.5}, {1, 0.5, 1.3, 0.7}))
      v.push_back(c);
    for (auto& c : expand(WallConstruction::HollowConcreteBlock, {0.1, 0.1, 0.3, 0.2}, {0.5, 0.3, 0.8, 0.5}))
      v.push_back(c);
    for (auto& c : expand(WallConstruction::Wood, {0, 0, 0, 0}, {0, 0, 0.2, 0.1})) v.push_back(c);
    return v;
  }();
  return t;
}

inline const std::vector<WallCell>& wall_insulation_table() {
  static const std::vector<WallCell> t = [] {
    std::vector<WallCell> v;
    for (auto& c : expand(WallConstruction::Concrete20, {1, 1, 1, 1}, {2, 1, 2, 2})) v.push_back(c);
    for (auto& c : expand(WallConstruction::HollowConcreteBlock, {1, 1, 1, 1}, {1, 1, 2, 2})) v.push_back(c);
    for (auto& c : expand(WallConstruction::Wood, {0, 0, 0, 0}, {0, 0, 1, 1})) v.push_back(c);
    return v;
  }();
  return t;
}

struct WindowCell {
  Orientation orientation;
  double ratio;
};

inline const std::vector<WindowCell>& window_table() {
  static const std::vector<WindowCell> t = {
      {Orientation::East, 0.8}, {Orientation::South, 0.3}, {Orientation::West, 1.0}, {Orientation::North, 0.6}};
  return t;
}

struct CollectorCell {
  int main_rooms;
  double area_m2;
};

inline const std::vector<CollectorCell>& collector_table() {
  static const std::vector<CollectorCell> t = {{1, 1.5}, {2, 1.5}, {3, 2.0}, {4, 2.5},
                                               {5, 3.0}, {6, 3.5}, {7, 3.5}, {9, 3.5}};
  return t;
}

inline constexpr double kStorageMinLPerM2 = 60.0;
inline constexpr double kStorageMaxLPerM2 = 120.0;
inline constexpr double kProductivityMin = 700.0;
inline constexpr double kPorosityMin = 0.25;

// ---------------------------------------------------------------- shading

/// Fraction of a vertical strip of height h, starting a below an infinitely
/// wide horizontal overhang of depth d, that cannot see the sun. Stratified
/// jittered rays: one random point per height band, traced towards the sun
/// until it crosses the overhang plane.
inline double shading_ray_oracle(double d, double h, double a, double altitude_deg, double relative_azimuth_deg,
                                 std::mt19937_64& rng, int rays = 2000) {
  const double deg = std::numbers::pi / 180.0;
  if (altitude_deg <= 0.0) return 1.0;
  // Sun direction in the wall frame: outward normal and up.
  const double sn = std::cos(altitude_deg * deg) * std::cos(relative_azimuth_deg * deg);
  const double su = std::sin(altitude_deg * deg);
  if (sn <= 0.0) return 1.0;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int blocked = 0;
  for (int i = 0; i < rays; ++i) {
    const double depth = a + h * (i + u01(rng)) / rays;  // below the overhang plane
    // Point (0, 0, -depth) moving along s reaches the overhang plane at t;
    // the overhang is infinitely wide so only the outward reach matters.
    const double t = depth / su;
    if (t * sn <= d) ++blocked;
  }
  return static_cast<double>(blocked) / rays;
}

// ---------------------------------------------------------------- psychrometrics

/// IAPWS-IF97 region 4 saturation pressure (Pa), valid 273.15 K to 647 K.
inline double if97_saturation_pressure_pa(double temperature_c) {
  const double n[] = {0.11670521452767e4,  -0.72421316703206e6, -0.17073846940092e2, 0.12020824702470e5,
                      -0.32325550322333e7, 0.14915108613530e2,  -0.48232657361591e4, 0.40511340542057e6,
                      -0.23855557567849,   0.65017534844798e3};
  const double t = temperature_c + 273.15;
  const double th = t + n[8] / (t - n[9]);
  const double A = th * th + n[0] * th + n[1];
  const double B = n[2] * th * th + n[3] * th + n[4];
  const double C = n[5] * th * th + n[6] * th + n[7];
  const double p = 2.0 * C / (-B + std::sqrt(B * B - 4.0 * A * C));
  return std::pow(p, 4) * 1.0e6;
}

inline double oracle_humidity_ratio(double temperature_c, double rh_pct, double pressure_pa = 101325.0) {
  const double pv = rh_pct / 100.0 * if97_saturation_pressure_pa(temperature_c);
  return 621.945 * pv / (pressure_pa - pv);
}

// ---------------------------------------------------------------- porosity

/// Independent porosity arithmetic for a random building: facade 1 is "A",
/// facade 2 is "B". Only main rooms count.
struct PorosityOracle {
  double so1 = 0.0, so2 = 0.0, sp1 = 0.0, sp2 = 0.0;
  double sp() const { return (sp1 + sp2) / 2.0; }
  double p1() const { return so1 / sp(); }
  double p2() const { return so2 / sp(); }
};

struct RandomBuilding {
  BuildingDescription building;
  PorosityOracle oracle;
};

inline RandomBuilding random_building(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> area(2.0, 30.0);
  std::uniform_real_distribution<double> frac(0.0, 0.6);
  std::uniform_int_distribution<int> nrooms(2, 7);
  std::uniform_int_distribution<int> side(0, 2);  // 0 on A, 1 on B, 2 through room
  std::bernoulli_distribution service(0.25);
  std::uniform_real_distribution<double> az(0.0, 44.0);

  RandomBuilding out;
  auto& b = out.building;
  b.name = "random";
  const double a_az = az(rng);
  b.facades = {{"A", a_az}, {"B", a_az + 180.0}};
  b.facade_pairs = {{"AB", "A", "B", std::nullopt}};
  const int n = nrooms(rng);
  int main_rooms = 0;
  for (int i = 0; i < n; ++i) {
    Room r;
    r.id = "r" + std::to_string(i);
    // The first two rooms are main rooms on each facade so the pair is assessable.
    r.kind = i < 2 || !service(rng) ? RoomKind::Main : RoomKind::Service;
    const int s = i < 2 ? i : side(rng);
    auto add = [&](const std::string& f, int k) {
      const double gross = area(rng);
      const double open = gross * frac(rng);
      r.facades.push_back({f, gross});
      r.external_openings.push_back({r.id + "_o" + std::to_string(k), open, f});
      if (r.kind == RoomKind::Main) {
        (f == "A" ? out.oracle.sp1 : out.oracle.sp2) += gross;
        (f == "A" ? out.oracle.so1 : out.oracle.so2) += open;
      }
    };
    if (s == 0 || s == 2) add("A", 0);
    if (s == 1 || s == 2) add("B", 1);
    r.internal_openings.push_back({r.id + "_door", 1.6, std::nullopt});
    if (r.kind == RoomKind::Main) ++main_rooms;
    b.rooms.push_back(std::move(r));
  }
  b.dwelling_type = main_rooms;
  return out;
}

}  // namespace ecodom::testing
