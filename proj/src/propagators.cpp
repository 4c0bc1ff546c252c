#include "paraspec/propagators.hpp"

#include "dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace paraspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXcd mode_frequencies_sq(int max_mode, double period,
                                     double wave_speed) {
  Eigen::VectorXcd w2(2 * max_mode + 1);
  for (int ell = -max_mode; ell <= max_mode; ++ell) {
    const double w = kTwoPi * ell * wave_speed / period;
    w2(max_mode + ell) = Complex{w * w, 0.0};
  }
  return w2;
}

Eigen::VectorXcd parabolic_factors(int max_mode, double dt, double mu,
                                   ParabolicScheme scheme) {
  Eigen::VectorXcd factors(2 * max_mode + 1);
  for (int ell = -max_mode; ell <= max_mode; ++ell) {
    const Complex symbol{mu * ell * ell, static_cast<double>(ell)};
    if (scheme == ParabolicScheme::implicit_euler)
      factors(max_mode + ell) = 1.0 / (1.0 + dt * symbol);
    else
      factors(max_mode + ell) =
          (1.0 - 0.5 * dt * symbol) / (1.0 + 0.5 * dt * symbol);
  }
  return factors;
}

/// Splitting stepper holding the dealias workspace, diffusion factors and
/// RK3 scratch so the window loop does not allocate per step.
class BurgersStepper {
 public:
  BurgersStepper(int max_mode, double period, double dt, double nu)
      : dt_(dt),
        workspace_(max_mode, period),
        half_diffusion_(2 * max_mode + 1),
        stage1_(2 * max_mode + 1),
        stage2_(2 * max_mode + 1),
        rhs_(2 * max_mode + 1) {
    for (int ell = -max_mode; ell <= max_mode; ++ell) {
      const double k = kTwoPi * ell / period;
      half_diffusion_(max_mode + ell) = Complex{std::exp(-nu * k * k * dt / 2.0), 0.0};
    }
  }

  /// One Strang step in place. Returns false once coefficients go non-finite.
  bool step(Eigen::VectorXcd& u) {
    u.array() *= half_diffusion_.array();
    // Shu-Osher SSP-RK3 for du/dt = L(u) = -1/2 d(u^2)/dx.
    workspace_.square_derivative(u, rhs_);
    stage1_ = u - (0.5 * dt_) * rhs_;
    workspace_.square_derivative(stage1_, rhs_);
    stage2_ = 0.75 * u + 0.25 * (stage1_ - (0.5 * dt_) * rhs_);
    workspace_.square_derivative(stage2_, rhs_);
    u = (1.0 / 3.0) * u + (2.0 / 3.0) * (stage2_ - (0.5 * dt_) * rhs_);
    if (!u.allFinite()) return false;
    u.array() *= half_diffusion_.array();
    return u.allFinite();
  }

 private:
  double dt_;
  detail::DealiasWorkspace workspace_;
  Eigen::VectorXcd half_diffusion_;
  Eigen::VectorXcd stage1_, stage2_, rhs_;
};

SpectralField parabolic_propagate(const SpectralField& field, double t0, double t1,
                                  const PropagatorSpec& spec) {
  const int steps = window_step_count(t0, t1, spec.dt);
  const Eigen::VectorXcd factors = parabolic_factors(
      field.max_mode(), spec.dt, spec.problem.viscosity, spec.problem.scheme);
  SpectralField out = field;
  for (int s = 0; s < steps; ++s) out.coeffs().array() *= factors.array();
  return out;
}

SpectralField burgers_propagate(const SpectralField& field, double t0, double t1,
                                const PropagatorSpec& spec) {
  const int steps = window_step_count(t0, t1, spec.dt);
  BurgersStepper stepper(field.max_mode(), field.period(), spec.dt,
                         spec.problem.viscosity);
  SpectralField out = field;
  for (int s = 0; s < steps; ++s) {
    // Once a state blows up it stays non-finite; stop burning steps on it.
    if (!stepper.step(out.coeffs())) break;
  }
  return out;
}

}  // namespace

WaveState::WaveState(SpectralField u_, SpectralField v_)
    : u(std::move(u_)), v(std::move(v_)) {
  if (u.period() != v.period() || u.max_mode() != v.max_mode())
    throw std::invalid_argument("wave state: u and v must share period and band");
}

WaveState& WaveState::operator+=(const WaveState& other) {
  u += other.u;
  v += other.v;
  return *this;
}

WaveState& WaveState::operator-=(const WaveState& other) {
  u -= other.u;
  v -= other.v;
  return *this;
}

WaveState& WaveState::operator*=(double scalar) {
  u *= scalar;
  v *= scalar;
  return *this;
}

WaveState operator+(WaveState lhs, const WaveState& rhs) {
  lhs += rhs;
  return lhs;
}

WaveState operator-(WaveState lhs, const WaveState& rhs) {
  lhs -= rhs;
  return lhs;
}

WaveState operator*(double scalar, WaveState state) {
  state *= scalar;
  return state;
}

double l2_norm_sq(const WaveState& state) {
  return l2_norm_sq(state.u) + l2_norm_sq(state.v);
}

int window_step_count(double t0, double t1, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("propagator: step size must be positive");
  const double length = t1 - t0;
  if (length <= 0.0) throw std::invalid_argument("propagator: empty time window");
  const auto steps = static_cast<long long>(std::llround(length / dt));
  if (steps < 1 || std::abs(steps * dt - length) > 1e-12 * length)
    throw std::invalid_argument(
        "propagator: step size does not divide the window length");
  return static_cast<int>(steps);
}

WaveState wave_verlet_step(const WaveState& state, double dt, double wave_speed) {
  const Eigen::VectorXcd w2 =
      mode_frequencies_sq(state.max_mode(), state.period(), wave_speed);
  WaveState out = state;
  auto u = out.u.coeffs().array();
  auto v = out.v.coeffs().array();
  v -= (0.5 * dt) * w2.array() * u;
  u += dt * v;
  v -= (0.5 * dt) * w2.array() * u;
  return out;
}

WaveState wave_propagate(const WaveState& state, double t0, double t1,
                         const PropagatorSpec& spec) {
  const int steps = window_step_count(t0, t1, spec.dt);
  const Eigen::VectorXcd w2 = mode_frequencies_sq(state.max_mode(), state.period(),
                                                  spec.problem.wave_speed);
  WaveState out = state;
  auto u = out.u.coeffs().array();
  auto v = out.v.coeffs().array();
  const double half = 0.5 * spec.dt;
  for (int s = 0; s < steps; ++s) {
    v -= half * w2.array() * u;
    u += spec.dt * v;
    v -= half * w2.array() * u;
  }
  return out;
}

SpectralField parabolic_step(const SpectralField& field, double dt, double mu,
                             ParabolicScheme scheme) {
  if (dt <= 0.0) throw std::invalid_argument("parabolic_step: dt must be positive");
  if (mu < 0.0) throw std::invalid_argument("parabolic_step: mu must be >= 0");
  const Eigen::VectorXcd factors =
      parabolic_factors(field.max_mode(), dt, mu, scheme);
  SpectralField out = field;
  out.coeffs().array() *= factors.array();
  return out;
}

SpectralField burgers_strang_step(const SpectralField& field, double dt,
                                  double nu) {
  if (dt <= 0.0) throw std::invalid_argument("burgers_strang_step: dt must be positive");
  if (nu < 0.0) throw std::invalid_argument("burgers_strang_step: nu must be >= 0");
  BurgersStepper stepper(field.max_mode(), field.period(), dt, nu);
  SpectralField out = field;
  stepper.step(out.coeffs());
  return out;
}

WaveState advance(const WaveState& state, double t0, double t1,
                  const PropagatorSpec& spec) {
  if (spec.problem.kind != ProblemKind::wave)
    throw std::invalid_argument("advance: wave state needs a wave propagator");
  if (spec.space_modes > state.max_mode())
    throw std::invalid_argument("advance: propagator band exceeds state band");
  if (spec.space_modes < state.max_mode()) {
    WaveState coarse(truncate(state.u, spec.space_modes),
                     truncate(state.v, spec.space_modes));
    const WaveState stepped = wave_propagate(coarse, t0, t1, spec);
    return {prolong(stepped.u, state.max_mode()),
            prolong(stepped.v, state.max_mode())};
  }
  return wave_propagate(state, t0, t1, spec);
}

SpectralField advance(const SpectralField& state, double t0, double t1,
                      const PropagatorSpec& spec) {
  if (spec.space_modes > state.max_mode())
    throw std::invalid_argument("advance: propagator band exceeds state band");
  if (spec.space_modes < state.max_mode()) {
    const SpectralField coarse = truncate(state, spec.space_modes);
    const SpectralField stepped = advance(coarse, t0, t1, spec);
    return prolong(stepped, state.max_mode());
  }
  switch (spec.problem.kind) {
    case ProblemKind::parabolic:
      return parabolic_propagate(state, t0, t1, spec);
    case ProblemKind::burgers:
      return burgers_propagate(state, t0, t1, spec);
    default:
      throw std::invalid_argument("advance: scalar state needs a scalar problem");
  }
}

}  // namespace paraspec
