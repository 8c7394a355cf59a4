#include "ecodom/psychro.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace ecodom {

double saturation_vapor_pressure(double t) {
  if (!(t >= -20.0 && t <= 60.0)) {
    throw std::out_of_range(fmt::format("temperature {} C outside [-20, 60]", t));
  }
  return 610.94 * std::exp(17.625 * t / (t + 243.04));
}

double humidity_ratio(double t, double rh, double pressure_pa) {
  if (!(rh >= 0.0 && rh <= 100.0)) throw std::out_of_range(fmt::format("relative humidity {} outside [0, 100]", rh));
  const double pv = rh / 100.0 * saturation_vapor_pressure(t);
  if (!(pressure_pa > pv)) {
    throw std::domain_error(fmt::format("vapour pressure {} Pa reaches total pressure {} Pa", pv, pressure_pa));
  }
  return 622.0 * pv / (pressure_pa - pv);
}

}  // namespace ecodom
