#include "ecodom/solar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ecodom {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double wrap360(double a) {
  a = std::fmod(a, 360.0);
  return a < 0.0 ? a + 360.0 : a;
}

}  // namespace

SolarPosition solar_position(double latitude_deg, double longitude_deg, Timestamp instant) {
  using namespace std::chrono;
  // Julian day of the Unix epoch is 2440587.5.
  const double unix_s = static_cast<double>(instant.time_since_epoch().count());
  const double jd = 2440587.5 + unix_s / 86400.0;
  const double jc = (jd - 2451545.0) / 36525.0;

  const double mean_long = wrap360(280.46646 + jc * (36000.76983 + jc * 0.0003032));
  const double mean_anom = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
  const double ecc = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);
  const double m = mean_anom * kDeg;
  const double center = std::sin(m) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
                        std::sin(2 * m) * (0.019993 - 0.000101 * jc) + std::sin(3 * m) * 0.000289;
  const double true_long = mean_long + center;
  const double omega = (125.04 - 1934.136 * jc) * kDeg;
  const double app_long = true_long - 0.00569 - 0.00478 * std::sin(omega);
  const double mean_obliq = 23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
  const double obliq = (mean_obliq + 0.00256 * std::cos(omega)) * kDeg;
  const double decl = std::asin(std::sin(obliq) * std::sin(app_long * kDeg));

  const double y = std::pow(std::tan(obliq / 2.0), 2);
  const double l0 = mean_long * kDeg;
  const double eq_time_min =
      4.0 / kDeg *
      (y * std::sin(2 * l0) - 2 * ecc * std::sin(m) + 4 * ecc * y * std::sin(m) * std::cos(2 * l0) -
       0.5 * y * y * std::sin(4 * l0) - 1.25 * ecc * ecc * std::sin(2 * m));

  const auto day_start = floor<days>(instant);
  const double utc_min = static_cast<double>((instant - day_start).count()) / 60.0;
  const double true_solar_min = std::fmod(utc_min + eq_time_min + 4.0 * longitude_deg + 1440.0 * 4, 1440.0);
  const double hour_angle = true_solar_min / 4.0 < 0.0 ? true_solar_min / 4.0 + 180.0 : true_solar_min / 4.0 - 180.0;

  const double lat = latitude_deg * kDeg;
  const double ha = hour_angle * kDeg;
  const double cos_zen =
      std::clamp(std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(ha), -1.0, 1.0);
  const double zen = std::acos(cos_zen);

  double azimuth = 0.0;
  const double denom = std::cos(lat) * std::sin(zen);
  if (std::abs(denom) > 1e-12) {
    const double c = std::clamp((std::sin(lat) * cos_zen - std::sin(decl)) / denom, -1.0, 1.0);
    const double a = std::acos(c) / kDeg;
    azimuth = hour_angle > 0.0 ? wrap360(a + 180.0) : wrap360(540.0 - a);
  } else {
    azimuth = latitude_deg > 0.0 ? 180.0 : 0.0;
  }

  SolarPosition pos;
  pos.altitude_deg = 90.0 - zen / kDeg;
  pos.azimuth_deg = azimuth;
  pos.declination_deg = decl / kDeg;
  return pos;
}

double overhang_shading_fraction(const OverhangGeometry& g, double surface_azimuth_deg, const SolarPosition& sun) {
  if (sun.altitude_deg <= 0.0) return 1.0;
  const double cos_gamma = std::cos((sun.azimuth_deg - surface_azimuth_deg) * kDeg);
  if (cos_gamma <= 0.0) return 1.0;
  if (g.depth_m <= 0.0 || g.height_m <= 0.0) return 0.0;
  const double tan_profile = std::tan(sun.altitude_deg * kDeg) / cos_gamma;
  const double drop = g.depth_m * tan_profile;
  return std::clamp((drop - g.offset_m) / g.height_m, 0.0, 1.0);
}

double sol_air_temperature(double t_out_c, double irradiance_w_m2, double absorptivity, double h_ext_w_m2k) {
  return t_out_c + absorptivity * irradiance_w_m2 / h_ext_w_m2k;
}

double cos_incidence(double tilt_deg, double surface_azimuth_deg, const SolarPosition& sun) {
  const double alt = sun.altitude_deg * kDeg;
  const double tilt = tilt_deg * kDeg;
  const double c = std::sin(alt) * std::cos(tilt) +
                   std::cos(alt) * std::sin(tilt) * std::cos((sun.azimuth_deg - surface_azimuth_deg) * kDeg);
  return std::max(0.0, c);
}

PlaneIrradiance plane_irradiance(double dni_w_m2, double dhi_w_m2, double tilt_deg, double surface_azimuth_deg,
                                 const SolarPosition& sun, double ground_albedo) {
  PlaneIrradiance out;
  const double sin_alt = std::max(0.0, std::sin(sun.altitude_deg * kDeg));
  if (sun.altitude_deg > 0.0) out.direct_w_m2 = dni_w_m2 * cos_incidence(tilt_deg, surface_azimuth_deg, sun);
  const double cos_tilt = std::cos(tilt_deg * kDeg);
  const double ghi = dni_w_m2 * sin_alt + dhi_w_m2;
  out.diffuse_w_m2 = dhi_w_m2 * (1.0 + cos_tilt) / 2.0 + ground_albedo * ghi * (1.0 - cos_tilt) / 2.0;
  return out;
}

}  // namespace ecodom
