#pragma once

#include <span>
#include <vector>

namespace ecodom {

/// Wind-driven cross ventilation through openings in series
/// (inlet facade, internal openings, outlet facade).
struct Apertures {
  std::vector<double> series_areas_m2;
  double discharge_coefficient = 0.6;
  double delta_cp = 0.5;  // windward minus leeward pressure coefficient at normal incidence
};

/// (sum A_k^-2)^(-1/2); zero when any area is zero or the list is empty.
double equivalent_area(std::span<const double> series_areas_m2);

/// Q = Cd * A_eq * U * sqrt(dCp), with dCp scaled by |cos(incidence)|
/// where incidence is the angle between the wind and the ventilation axis.
double airflow_m3_s(const Apertures& apertures, double wind_speed_m_s, double incidence_deg);

/// 3600 * Q / V. Throws std::invalid_argument for a non-positive volume.
double ventilation_ach(const Apertures& apertures, double wind_speed_m_s, double incidence_deg, double volume_m3);

}  // namespace ecodom
