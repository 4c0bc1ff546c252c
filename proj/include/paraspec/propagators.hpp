#pragma once

#include "paraspec/spectral_field.hpp"

namespace paraspec {

enum class ProblemKind { wave, parabolic, burgers };

enum class ParabolicScheme { implicit_euler, crank_nicolson };

/// Physics of one model problem. The spatial domain (period) travels with the
/// state; only the coefficients of the evolution live here.
struct Problem {
  ProblemKind kind = ProblemKind::wave;
  double wave_speed = 0.0;  // c
  double viscosity = 0.0;   // mu (parabolic) or nu (burgers)
  ParabolicScheme scheme = ParabolicScheme::crank_nicolson;

  static Problem wave(double c) { return {ProblemKind::wave, c, 0.0}; }
  static Problem parabolic(double mu,
                           ParabolicScheme s = ParabolicScheme::crank_nicolson) {
    return {ProblemKind::parabolic, 0.0, mu, s};
  }
  static Problem burgers(double nu) { return {ProblemKind::burgers, 0.0, nu}; }
};

/// One time integrator: step size and the spatial band it works in. A
/// propagator with space_modes below the state's band is coarse in space:
/// it truncates, steps at the low resolution and zero-pads back.
struct PropagatorSpec {
  Problem problem;
  double dt = 0.0;
  int space_modes = 0;
};

/// Displacement/velocity pair (u, du/dt) sharing one band and period.
struct WaveState {
  SpectralField u;
  SpectralField v;

  WaveState() = default;
  WaveState(SpectralField u_, SpectralField v_);

  double period() const { return u.period(); }
  int max_mode() const { return u.max_mode(); }

  WaveState& operator+=(const WaveState& other);
  WaveState& operator-=(const WaveState& other);
  WaveState& operator*=(double scalar);
};

WaveState operator+(WaveState lhs, const WaveState& rhs);
WaveState operator-(WaveState lhs, const WaveState& rhs);
WaveState operator*(double scalar, WaveState state);

/// Phase-space squared norm ||u||^2 + ||v||^2.
double l2_norm_sq(const WaveState& state);

inline bool all_finite(const SpectralField& field) { return field.all_finite(); }
inline bool all_finite(const WaveState& state) {
  return state.u.all_finite() && state.v.all_finite();
}

/// Number of equal steps a window of length (t1-t0) divides into; the step
/// must fit the window to 1e-12 relative, otherwise the configuration is
/// rejected rather than silently adjusting the step size.
int window_step_count(double t0, double t1, double dt);

/// One velocity Verlet step of the decoupled mode oscillators
/// u_l'' = -omega_l^2 u_l, omega_l = 2*pi*|l|*c/T. The l = 0 mode has no
/// restoring force and the same formulas reduce to free drift.
WaveState wave_verlet_step(const WaveState& state, double dt, double wave_speed);

/// Verlet sweep over [t0, t1] with the spec's step size.
WaveState wave_propagate(const WaveState& state, double t0, double t1,
                         const PropagatorSpec& spec);

/// One step of du/dt = -(mu l^2 + i l) u per mode (period-2*pi domain):
/// implicit Euler divides by 1 + dt*s_l, Crank-Nicolson applies the Cayley
/// factor (1 - dt*s_l/2)/(1 + dt*s_l/2).
SpectralField parabolic_step(const SpectralField& field, double dt, double mu,
                             ParabolicScheme scheme);

/// One symmetrized splitting step for viscous Burgers: exact half-step
/// diffusion in coefficient space, a full SSP-RK3 step of the dealiased
/// convection d u/dt = -1/2 d(u^2)/dx, exact half-step diffusion. A blow-up
/// shows up as non-finite coefficients in the returned field, never a crash.
SpectralField burgers_strang_step(const SpectralField& field, double dt,
                                  double nu);

/// Uniform window propagator used by the parareal engine. Dispatches on the
/// problem kind and applies the coarse-in-space transfer when the spec's band
/// is below the state's. Deterministic: identical inputs give identical bits.
WaveState advance(const WaveState& state, double t0, double t1,
                  const PropagatorSpec& spec);
SpectralField advance(const SpectralField& state, double t0, double t1,
                      const PropagatorSpec& spec);

}  // namespace paraspec
