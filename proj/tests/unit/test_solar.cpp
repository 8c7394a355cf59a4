#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ecodom/solar.hpp"
#include "oracles.hpp"

using namespace ecodom;
namespace t = ecodom::testing;

namespace {

struct SpaCase {
  double lat, lon;
  const char* time;
  double elevation, azimuth;
};

// Reference positions from NREL SPA (pvlib.solarposition.spa_python,
// geometric elevation), random sites and instants between 1995 and 2045.
const SpaCase kSpa[] = {
    {32.875, -22.004, "2037-12-06T03:28:00Z", -59.7681, 78.2574},
    {23.684, -146.096, "2031-10-15T16:15:00Z", 6.6566, 102.4612},
    {34.328, -133.879, "2033-01-21T07:31:00Z", -64.3093, 298.2309},
    {-5.954, -46.513, "2004-02-16T19:30:00Z", 28.1183, 259.1535},
    {17.264, 116.194, "2041-05-04T01:05:00Z", 45.2937, 84.4360},
    {-6.790, -98.194, "2022-09-24T02:30:00Z", -30.9663, 265.4173},
    {-52.342, 117.947, "2008-11-02T07:46:00Z", 30.7630, 286.3595},
    {30.971, -52.371, "2026-08-01T18:30:00Z", 48.5379, 262.0167},
    {56.484, 141.524, "2028-11-23T11:54:00Z", -45.0068, 307.8057},
    {-36.643, -11.980, "1997-03-10T23:11:00Z", -42.4798, 217.5445},
    {-41.485, 65.898, "2041-02-15T15:57:00Z", -13.9858, 238.9707},
    {56.101, -62.703, "2040-04-11T08:19:00Z", -7.8471, 61.6175},
    {-3.653, -111.790, "2013-07-10T12:29:00Z", -16.0863, 67.9686},
    {-44.409, -8.746, "2011-07-06T05:03:00Z", -32.6872, 89.2062},
    {20.378, -22.625, "2006-05-06T22:22:00Z", -31.3741, 305.8380},
    {39.921, 72.095, "1999-11-11T14:26:00Z", -28.2356, 270.3863},
    {39.871, 109.715, "2014-05-17T07:46:00Z", 44.8273, 257.1659},
    {-25.401, 65.698, "2026-11-02T20:42:00Z", -45.0592, 151.6591},
    {-36.011, -177.350, "2001-12-27T05:30:00Z", 17.3818, 253.4213},
    {34.431, 59.346, "2018-07-30T23:52:00Z", -15.2483, 54.4102},
    {33.687, -14.790, "2030-04-05T01:59:00Z", -48.0410, 21.4912},
    {8.249, -129.673, "2000-09-22T14:31:00Z", -0.0515, 89.9446},
    {20.208, -10.405, "2037-10-02T21:34:00Z", -44.0544, 284.6810},
    {31.800, 48.499, "2023-04-06T14:59:00Z", 1.1900, 276.9170},
    {6.430, 21.315, "2034-09-30T02:11:00Z", -33.5510, 89.0727},
    {-56.302, -22.782, "2010-03-13T21:19:00Z", -11.0508, 247.6999},
    {-34.250, -32.930, "2044-08-19T13:20:00Z", 41.5003, 18.1224},
    {-31.927, -159.011, "2037-09-02T06:34:00Z", -29.1128, 260.5134},
    {-26.234, -74.306, "2001-04-25T04:50:00Z", -76.9140, 185.5939},
    {34.068, 59.153, "2022-11-07T19:11:00Z", -70.5988, 333.0895},
    {-11.234, 113.047, "2011-01-23T04:51:00Z", 81.2547, 198.1380},
    {-57.275, -147.583, "2003-05-08T08:13:00Z", -46.0830, 213.2901},
    {26.683, -13.724, "2030-11-08T06:44:00Z", -6.2097, 105.4783},
    {0.125, -125.168, "2003-01-24T05:25:00Z", -40.2080, 244.4692},
    {23.558, -19.384, "2003-04-24T11:38:00Z", 64.4760, 110.5900},
    {-23.819, 46.902, "2025-05-11T22:11:00Z", -69.9957, 102.6200},
    {-49.482, -137.518, "2013-02-02T14:28:00Z", 3.8833, 111.2574},
    {55.428, 147.089, "2019-10-03T03:16:00Z", 28.7650, 201.5031},
    {-28.096, 168.903, "2008-01-22T01:39:00Z", 77.1376, 307.5151},
    {-6.077, -81.993, "2030-11-05T04:58:00Z", -67.9839, 188.7263},
    {-48.433, 144.937, "2001-05-18T20:55:00Z", -8.5271, 69.8280},
    {-35.716, -69.856, "2035-06-08T04:00:00Z", -74.6379, 215.5215},
    {-38.787, 128.381, "1995-12-23T13:21:00Z", -21.3064, 210.5755},
    {26.336, -24.447, "2032-12-04T11:06:00Z", 30.3950, 141.4402},
    {15.277, 30.275, "2027-06-29T19:45:00Z", -38.9147, 318.1960},
    {-49.867, -30.309, "1997-01-29T23:29:00Z", -13.1951, 220.2920},
    {-0.721, -61.250, "2028-01-12T04:33:00Z", -67.0322, 168.0194},
    {-47.592, 31.552, "2002-03-24T08:57:00Z", 39.0940, 20.5143},
    {-39.529, 153.043, "2044-06-26T02:21:00Z", 26.7388, 352.2388},
    {-18.376, 32.730, "2024-01-20T15:05:00Z", 18.6758, 254.2938},
    {-57.264, 165.081, "2019-02-12T01:35:00Z", 46.3860, 352.5646},
    {33.928, -150.217, "2008-10-16T15:50:00Z", -4.3517, 98.1476},
    {-1.115, 157.618, "2019-05-02T14:20:00Z", -70.5566, 42.0201},
    {8.607, -9.544, "2035-05-19T17:57:00Z", 11.7177, 288.6159},
    {-20.212, 7.442, "2008-05-07T15:25:00Z", 20.6878, 298.2148},
    {-7.331, -172.220, "2013-03-08T16:10:00Z", -21.4827, 97.9542},
    {47.539, -129.510, "2010-02-09T13:11:00Z", -27.7266, 81.2284},
    {-46.971, 62.006, "2000-12-10T22:35:00Z", -10.2406, 140.8342},
    {19.131, 81.718, "2009-01-23T00:46:00Z", -6.0227, 108.5369},
    {32.238, -141.213, "2025-09-24T21:57:00Z", 55.5742, 198.0480},
    {-21.100, 55.500, "2024-12-21T08:15:00Z", 87.6447, 173.2108},
    {-21.100, 55.500, "2024-06-21T08:15:00Z", 45.4450, 1.5982},
    {-21.100, 55.500, "2024-01-15T06:00:00Z", 55.7722, 97.0179},
    {-21.100, 55.500, "2024-01-15T12:00:00Z", 40.6320, 259.7002},
};

Timestamp at(const char* s) { return *parse_timestamp(s); }

double angle_diff(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

SolarPosition sun(double alt, double az) {
  SolarPosition s;
  s.altitude_deg = alt;
  s.azimuth_deg = az;
  return s;
}

}  // namespace

TEST(SolarPosition, MatchesSpaReference) {
  for (const auto& c : kSpa) {
    const auto p = solar_position(c.lat, c.lon, at(c.time));
    EXPECT_NEAR(p.altitude_deg, c.elevation, 0.5) << c.time;
    // Azimuth is ill-conditioned near the zenith.
    if (c.elevation < 89.0) EXPECT_LT(angle_diff(p.azimuth_deg, c.azimuth), 0.5) << c.time;
  }
}

TEST(SolarPosition, EquatorEquinoxNoonIsNearZenith) {
  // Solar noon at lon 0 on the March equinox is about 12:07 UTC.
  const auto p = solar_position(0.0, 0.0, at("2024-03-20T12:07:00Z"));
  EXPECT_GT(p.altitude_deg, 89.0);
}

TEST(SolarPosition, MidnightIsBelowHorizon) {
  EXPECT_LT(solar_position(-21.1, 55.5, at("2024-01-15T20:00:00Z")).altitude_deg, 0.0);  // 00:00 local
  EXPECT_LT(solar_position(48.85, 2.35, at("2024-06-21T23:50:00Z")).altitude_deg, 0.0);
}

TEST(SolarPosition, ReunionDecemberNoonSunIsSouth) {
  // Declination -23.4 is south of latitude -21.1, so the noon sun stands
  // in the southern half of the sky.
  const auto p = solar_position(-21.1, 55.5, at("2024-12-21T08:15:00Z"));
  EXPECT_LT(p.declination_deg, -21.1);
  EXPECT_GT(p.azimuth_deg, 90.0);
  EXPECT_LT(p.azimuth_deg, 270.0);
  // In June the noon sun is north.
  const auto j = solar_position(-21.1, 55.5, at("2024-06-21T08:15:00Z"));
  EXPECT_TRUE(j.azimuth_deg < 90.0 || j.azimuth_deg > 270.0);
}

TEST(Shading, ClosedFormCases) {
  const OverhangGeometry none{0.0, 1.0, 0.0};
  EXPECT_EQ(overhang_shading_fraction(none, 180.0, sun(40, 180)), 0.0);

  const OverhangGeometry huge{1e6, 1.0, 0.0};
  EXPECT_EQ(overhang_shading_fraction(huge, 180.0, sun(1, 180)), 1.0);

  // d/h = 1 with a 45 degree profile angle: the shadow reaches the sill.
  const OverhangGeometry unit{1.0, 1.0, 0.0};
  EXPECT_NEAR(overhang_shading_fraction(unit, 180.0, sun(45, 180)), 1.0, 1e-12);

  // Oblique sun: tan(profile) = tan(alt) / cos(gamma).
  const double alt = 30.0, gamma = 60.0;
  const double tan_profile = std::tan(alt * std::numbers::pi / 180.0) / std::cos(gamma * std::numbers::pi / 180.0);
  const OverhangGeometry g{0.5, 2.0, 0.1};
  EXPECT_NEAR(overhang_shading_fraction(g, 90.0, sun(alt, 90.0 + gamma)), (0.5 * tan_profile - 0.1) / 2.0, 1e-12);

  // Sun behind the wall or below the horizon.
  EXPECT_EQ(overhang_shading_fraction(unit, 0.0, sun(30, 180)), 1.0);
  EXPECT_EQ(overhang_shading_fraction(unit, 0.0, sun(-5, 0)), 1.0);
}

TEST(Shading, MatchesRayOracle) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> depth(0.0, 2.0), height(0.2, 3.0), offset(0.0, 1.0);
  std::uniform_real_distribution<double> alt(0.5, 89.5), rel(-89.5, 89.5), surf(0.0, 360.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const OverhangGeometry g{depth(rng), height(rng), offset(rng)};
    const double a = alt(rng), r = rel(rng), s = surf(rng);
    const double analytic = overhang_shading_fraction(g, s, sun(a, std::fmod(s + r + 360.0, 360.0)));
    const double oracle = t::shading_ray_oracle(g.depth_m, g.height_m, g.offset_m, a, r, rng);
    worst = std::max(worst, std::abs(analytic - oracle));
  }
  EXPECT_LE(worst, 0.02);
}

TEST(Shading, DeeperOverhangNeverShadesLess) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto s = sun(1 + 88 * u(rng), 360 * u(rng));
    const OverhangGeometry g{2 * u(rng), 0.2 + 2 * u(rng), u(rng)};
    OverhangGeometry deeper = g;
    deeper.depth_m += u(rng);
    ASSERT_GE(overhang_shading_fraction(deeper, 180.0, s), overhang_shading_fraction(g, 180.0, s));
  }
}

TEST(SolAir, Arithmetic) {
  EXPECT_DOUBLE_EQ(sol_air_temperature(30.0, 0.0, 0.8, 25.0), 30.0);
  EXPECT_DOUBLE_EQ(sol_air_temperature(30.0, 1000.0, 0.8, 25.0), 62.0);
  const double dark = sol_air_temperature(30.0, 1000.0, 0.8, 25.0) - 30.0;
  const double light = sol_air_temperature(30.0, 1000.0, 0.4, 25.0) - 30.0;
  EXPECT_DOUBLE_EQ(light, dark / 2.0);
}

TEST(PlaneIrradiance, HorizontalAndVertical) {
  const auto s = sun(90.0, 0.0);
  const auto h = plane_irradiance(800.0, 100.0, 0.0, 0.0, s);
  EXPECT_NEAR(h.direct_w_m2, 800.0, 1e-9);
  EXPECT_NEAR(h.diffuse_w_m2, 100.0, 1e-9);
  const auto v = plane_irradiance(800.0, 100.0, 90.0, 0.0, s);
  EXPECT_NEAR(v.direct_w_m2, 0.0, 1e-9);
  EXPECT_NEAR(v.diffuse_w_m2, 50.0 + 0.2 * 900.0 / 2.0, 1e-9);
  const auto night = plane_irradiance(0.0, 0.0, 90.0, 0.0, sun(-10, 0));
  EXPECT_EQ(night.total(), 0.0);
}
