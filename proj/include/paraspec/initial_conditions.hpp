#pragma once

#include "paraspec/spectral_field.hpp"

namespace paraspec {

enum class PowerLawStyle {
  parabolic,  // c_l = +-0.5i/|l|^p, an odd (sine) series
  wave,       // c_l = 1/|l|^p, an even (cosine) series
};

/// Power-law spectrum with c_0 = 0 and |c_l| ~ |l|^{-p}; the decay rate p
/// controls the regularity of the initial data.
SpectralField init_power_law(int max_mode, double p, PowerLawStyle style,
                             double period);

/// Ricker wavelet g(x) = (1 - 2*a^2) * exp(-a^2) with a = f_s*pi*(x-x_s)/c,
/// sampled on 8*(2N+1) uniform points and band-limited to |l| <= N.
SpectralField init_ricker(int max_mode, double source_frequency,
                          double source_position, double wave_speed,
                          double period);

}  // namespace paraspec
