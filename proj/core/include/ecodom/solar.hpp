#pragma once

#include "ecodom/timestamp.hpp"

namespace ecodom {

/// Degrees; azimuth clockwise from North in [0, 360).
struct SolarPosition {
  double altitude_deg = 0.0;
  double azimuth_deg = 0.0;
  double declination_deg = 0.0;
};

/// NOAA / Meeus low-precision ephemeris, geometric (no refraction).
/// Agrees with NREL SPA to a few hundredths of a degree for 1950-2050.
SolarPosition solar_position(double latitude_deg, double longitude_deg, Timestamp instant);

/// Horizontal overhang of infinite width above a vertical surface.
struct OverhangGeometry {
  double depth_m = 0.0;   // d: horizontal projection
  double height_m = 0.0;  // h: height of the protected surface
  double offset_m = 0.0;  // a: vertical gap between overhang and top of surface
};

/// Shaded fraction of a vertical surface facing `surface_azimuth_deg`.
///
/// The shadow edge drops d * tan(profile angle) below the overhang, where
/// tan(profile) = tan(altitude) / cos(sun azimuth - surface azimuth). The
/// sunlit part starts `offset_m` below the overhang. Returns 1 when the sun
/// is below the horizon or behind the surface.
double overhang_shading_fraction(const OverhangGeometry& g, double surface_azimuth_deg, const SolarPosition& sun);

/// T_out + alpha * I / h_e.
double sol_air_temperature(double t_out_c, double irradiance_w_m2, double absorptivity, double h_ext_w_m2k);

/// Cosine of the angle between the sun and the outward surface normal,
/// clipped at zero.
double cos_incidence(double tilt_deg, double surface_azimuth_deg, const SolarPosition& sun);

struct PlaneIrradiance {
  double direct_w_m2 = 0.0;
  double diffuse_w_m2 = 0.0;  // isotropic sky plus ground-reflected
  double total() const { return direct_w_m2 + diffuse_w_m2; }
};

/// Direct normal and diffuse horizontal irradiance transposed onto a plane.
PlaneIrradiance plane_irradiance(double dni_w_m2, double dhi_w_m2, double tilt_deg, double surface_azimuth_deg,
                                 const SolarPosition& sun, double ground_albedo = 0.2);

}  // namespace ecodom
