#include "ecodom/ventilation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ecodom {

double equivalent_area(std::span<const double> areas) {
  if (areas.empty()) return 0.0;
  double sum = 0.0;
  for (double a : areas) {
    if (!(a > 0.0)) return 0.0;
    sum += 1.0 / (a * a);
  }
  return 1.0 / std::sqrt(sum);
}

double airflow_m3_s(const Apertures& apertures, double wind_speed_m_s, double incidence_deg) {
  const double a_eq = equivalent_area(apertures.series_areas_m2);
  if (a_eq <= 0.0 || wind_speed_m_s <= 0.0) return 0.0;
  const double factor = std::abs(std::cos(incidence_deg * std::numbers::pi / 180.0));
  const double dcp = apertures.delta_cp * factor;
  return apertures.discharge_coefficient * a_eq * wind_speed_m_s * std::sqrt(dcp);
}

double ventilation_ach(const Apertures& apertures, double wind_speed_m_s, double incidence_deg, double volume_m3) {
  if (!(volume_m3 > 0.0)) throw std::invalid_argument("zone volume must be > 0");
  return 3600.0 * airflow_m3_s(apertures, wind_speed_m_s, incidence_deg) / volume_m3;
}

}  // namespace ecodom
