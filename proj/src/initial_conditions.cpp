#include "paraspec/initial_conditions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace paraspec {

SpectralField init_power_law(int max_mode, double p, PowerLawStyle style,
                             double period) {
  if (p <= 0.0) throw std::invalid_argument("init_power_law: p must be positive");
  SpectralField field(period, max_mode);
  for (int ell = 1; ell <= max_mode; ++ell) {
    const double amplitude = 1.0 / std::pow(static_cast<double>(ell), p);
    if (style == PowerLawStyle::parabolic)
      field.set_conjugate_pair(ell, Complex{0.0, 0.5 * amplitude});
    else
      field.set_conjugate_pair(ell, Complex{amplitude, 0.0});
  }
  return field;
}

SpectralField init_ricker(int max_mode, double source_frequency,
                          double source_position, double wave_speed,
                          double period) {
  if (source_position < 0.0 || source_position >= period)
    throw std::invalid_argument("init_ricker: source position outside the domain");
  const int m = 8 * (2 * max_mode + 1);
  Eigen::VectorXd samples(m);
  for (int j = 0; j < m; ++j) {
    const double x = period * j / m;
    const double a = source_frequency * std::numbers::pi * (x - source_position) /
                     wave_speed;
    samples(j) = (1.0 - 2.0 * a * a) * std::exp(-a * a);
  }
  return field_from_samples(samples, period, max_mode);
}

}  // namespace paraspec
