#pragma once

namespace ecodom {

inline constexpr double kStandardPressurePa = 101325.0;

/// Magnus form (Alduchov and Eskridge coefficients), Pa over liquid water.
/// Valid for T in [-20, 60] C; throws std::out_of_range outside.
double saturation_vapor_pressure(double temperature_c);

/// Humidity ratio in g of vapour per kg of dry air:
/// w = 622 pv / (P - pv), pv = RH/100 * psat(T).
/// Throws std::out_of_range for RH outside [0, 100] and std::domain_error
/// when the vapour pressure reaches the total pressure.
double humidity_ratio(double temperature_c, double relative_humidity_pct, double pressure_pa = kStandardPressurePa);

}  // namespace ecodom
