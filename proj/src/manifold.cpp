#include "paraspec/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace paraspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_partition_fits(const GroupPartition& partition, int max_mode,
                          const char* who) {
  if (partition.max_mode() != max_mode)
    throw std::invalid_argument(std::string(who) +
                                ": partition band does not match the field band");
}

/// Quadratic H_i(lambda) = c2*lambda^2 + c1*lambda + c0 along the gradient ray.
struct GroupQuadratic {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;

  double value(double lambda) const { return (c2 * lambda + c1) * lambda + c0; }

  /// Real root of smallest magnitude of value(lambda) = target; NaN if none.
  double smallest_root(double target) const {
    const double rhs = c0 - target;
    if (c2 == 0.0) {
      if (c1 == 0.0)
        return rhs == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
      return -rhs / c1;
    }
    double disc = c1 * c1 - 4.0 * c2 * rhs;
    if (disc < 0.0) {
      // Tolerate rounding at the tangency boundary.
      const double scale = c1 * c1 + std::abs(4.0 * c2 * rhs);
      if (disc > -1e-14 * scale)
        disc = 0.0;
      else
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (c1 + std::copysign(sq, c1));
    const double r1 = q / c2;
    const double r2 = q != 0.0 ? rhs / q : r1;
    return std::abs(r1) <= std::abs(r2) ? r1 : r2;
  }
};

GroupQuadratic wave_group_quadratic(const WaveState& state, double wave_speed,
                                    const GroupPartition& partition, int group) {
  const int n = state.max_mode();
  const double period = state.period();
  GroupQuadratic quad;
  for (int ell = -n; ell <= n; ++ell) {
    if (!partition.contains(group, ell)) continue;
    const double w = kTwoPi * ell * wave_speed / period;
    const double w2 = w * w;
    const double uu = std::norm(state.u.coeffs()(n + ell));
    const double vv = std::norm(state.v.coeffs()(n + ell));
    quad.c0 += vv + w2 * uu;
    quad.c1 += 4.0 * (vv + w2 * w2 * uu);
    quad.c2 += 4.0 * (vv + w2 * w2 * w2 * uu);
  }
  quad.c0 *= period;
  quad.c1 *= period;
  quad.c2 *= period;
  return quad;
}

void apply_wave_multiplier(WaveState& state, double wave_speed,
                           const GroupPartition& partition, int group,
                           double lambda) {
  const int n = state.max_mode();
  const double period = state.period();
  for (int ell = -n; ell <= n; ++ell) {
    if (!partition.contains(group, ell)) continue;
    const double w = kTwoPi * ell * wave_speed / period;
    state.u.coeffs()(n + ell) *= 1.0 + 2.0 * lambda * w * w;
    state.v.coeffs()(n + ell) *= 1.0 + 2.0 * lambda;
  }
}

WaveState project_wave_impl(const WaveState& state, const EnergyTargets& targets,
                            double wave_speed, std::vector<double>* lambdas,
                            bool iterative) {
  check_partition_fits(targets.partition, state.max_mode(), "project_wave_groups");
  WaveState out = state;
  if (lambdas) lambdas->assign(targets.partition.group_count(), 0.0);
  for (int i = 1; i <= targets.partition.group_count(); ++i) {
    const GroupQuadratic quad =
        wave_group_quadratic(state, wave_speed, targets.partition, i);
    const double target = targets.targets[i - 1];
    if (quad.c2 == 0.0 && quad.c1 == 0.0) {
      // Energy-free group (at most an l = 0 displacement): reachable only at 0.
      if (target != 0.0)
        throw ProjectionError(i, "projection: zero group component, nonzero target");
      continue;
    }
    double lambda;
    if (iterative) {
      // Bracket the root of smallest magnitude by scanning outward from 0.
      const auto residual = [&](double l) { return quad.value(l) - target; };
      const double span = 1.0 + std::abs(quad.smallest_root(target));
      double lo = 0.0, hi = 0.0;
      double step = span * 1e-6;
      const double r0 = residual(0.0);
      bool found = false;
      for (int iter = 0; iter < 200 && !found; ++iter, step *= 1.6) {
        for (const double candidate : {step, -step}) {
          if (residual(candidate) * r0 <= 0.0) {
            lo = std::min(0.0, candidate);
            hi = std::max(0.0, candidate);
            found = true;
            break;
          }
        }
      }
      if (!found) throw ProjectionError(i, "projection: target unreachable");
      lambda = solve_multiplier(residual, 0.0, lo, hi);
    } else {
      lambda = quad.smallest_root(target);
    }
    if (!std::isfinite(lambda))
      throw ProjectionError(i, "projection: no real multiplier for target");
    apply_wave_multiplier(out, wave_speed, targets.partition, i, lambda);
    if (lambdas) (*lambdas)[i - 1] = lambda;
  }
  return out;
}

}  // namespace

EnergyTargets::EnergyTargets(GroupPartition partition_, std::vector<double> targets_)
    : partition(std::move(partition_)), targets(std::move(targets_)) {
  if (targets.size() != static_cast<std::size_t>(partition.group_count()))
    throw std::invalid_argument("energy targets: one target per group required");
  for (const double t : targets)
    if (!(t >= 0.0))
      throw std::invalid_argument("energy targets: targets must be >= 0");
}

DampingFilter::DampingFilter(GroupPartition partition_, std::vector<double> factors_)
    : partition(std::move(partition_)), factors(std::move(factors_)) {
  if (factors.size() != static_cast<std::size_t>(partition.group_count()))
    throw std::invalid_argument("damping filter: one factor per group required");
  if (factors[0] != 1.0)
    throw std::invalid_argument("damping filter: f(1) must be 1");
  for (const double f : factors)
    if (!(f > 0.0 && f <= 1.0))
      throw std::invalid_argument("damping filter: factors must lie in (0, 1]");
}

DampingFilter DampingFilter::default_rule(GroupPartition partition) {
  std::vector<double> factors(partition.group_count(), 1.0);
  for (int i = 2; i <= partition.group_count(); ++i)
    factors[i - 1] = 1.0 / (static_cast<double>(i) * i + 1.0);
  return DampingFilter(std::move(partition), std::move(factors));
}

DampingFilter DampingFilter::two_group_rule(GroupPartition partition) {
  std::vector<double> factors(partition.group_count(), 1.0);
  for (int i = 2; i <= partition.group_count(); ++i)
    factors[i - 1] = 1.0 / (3.0 * i + 1.0);
  return DampingFilter(std::move(partition), std::move(factors));
}

bool DampingFilter::is_identity() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](double f) { return f == 1.0; });
}

double mode_energy(Complex u_hat, Complex v_hat, int ell, double wave_speed,
                   double period) {
  const double w = kTwoPi * ell * wave_speed / period;
  return std::norm(v_hat) + w * w * std::norm(u_hat);
}

double hamiltonian(const WaveState& state, double wave_speed) {
  const int n = state.max_mode();
  double sum = 0.0;
  for (int ell = -n; ell <= n; ++ell)
    sum += mode_energy(state.u.coeffs()(n + ell), state.v.coeffs()(n + ell), ell,
                       wave_speed, state.period());
  return state.period() * sum;
}

std::vector<double> group_energies(const WaveState& state, double wave_speed,
                                   const GroupPartition& partition) {
  check_partition_fits(partition, state.max_mode(), "group_energies");
  const int n = state.max_mode();
  std::vector<double> energies(partition.group_count(), 0.0);
  for (int ell = -n; ell <= n; ++ell)
    energies[partition.group_of(ell) - 1] +=
        state.period() * mode_energy(state.u.coeffs()(n + ell),
                                     state.v.coeffs()(n + ell), ell, wave_speed,
                                     state.period());
  return energies;
}

double group_energy(const WaveState& state, double wave_speed,
                    const GroupPartition& partition, int group) {
  partition.check_group(group);
  return group_energies(state, wave_speed, partition)[group - 1];
}

EnergyTargets wave_group_targets(const WaveState& state, double wave_speed,
                                 const GroupPartition& partition) {
  return EnergyTargets(partition, group_energies(state, wave_speed, partition));
}

std::vector<double> group_norms_sq(const SpectralField& field,
                                   const GroupPartition& partition) {
  check_partition_fits(partition, field.max_mode(), "group_norms_sq");
  const int n = field.max_mode();
  std::vector<double> norms(partition.group_count(), 0.0);
  for (int ell = -n; ell <= n; ++ell)
    norms[partition.group_of(ell) - 1] +=
        field.period() * std::norm(field.coeffs()(n + ell));
  return norms;
}

WaveState project_wave_groups(const WaveState& state, const EnergyTargets& targets,
                              double wave_speed, std::vector<double>* lambdas) {
  return project_wave_impl(state, targets, wave_speed, lambdas, false);
}

WaveState project_wave_groups_iterative(const WaveState& state,
                                        const EnergyTargets& targets,
                                        double wave_speed,
                                        std::vector<double>* lambdas) {
  return project_wave_impl(state, targets, wave_speed, lambdas, true);
}

EnergyTargets burgers_group_targets(const SpectralField& u_prev_iter,
                                    const SpectralField& fine_of_prev_iter,
                                    const SpectralField& u_current_iter,
                                    const GroupPartition& partition) {
  const double denom = l2_norm_sq(u_prev_iter);
  if (denom <= 0.0)
    throw std::invalid_argument(
        "burgers_group_targets: previous iterate has zero norm");
  const double ratio = l2_norm_sq(u_current_iter) / denom;
  std::vector<double> targets = group_norms_sq(fine_of_prev_iter, partition);
  for (double& t : targets) t *= ratio;
  return EnergyTargets(partition, std::move(targets));
}

SpectralField project_norm_groups(const SpectralField& field,
                                  const EnergyTargets& targets,
                                  std::vector<double>* lambdas) {
  check_partition_fits(targets.partition, field.max_mode(), "project_norm_groups");
  const std::vector<double> norms = group_norms_sq(field, targets.partition);
  const int groups = targets.partition.group_count();
  std::vector<double> scales(groups, 1.0);
  if (lambdas) lambdas->assign(groups, 0.0);
  for (int i = 1; i <= groups; ++i) {
    const double target = targets.targets[i - 1];
    if (target == 0.0) {
      scales[i - 1] = 0.0;
    } else if (norms[i - 1] == 0.0) {
      throw ProjectionError(i, "projection: zero group component, nonzero target");
    } else {
      scales[i - 1] = std::sqrt(target / norms[i - 1]);
    }
    if (lambdas) (*lambdas)[i - 1] = 0.5 * (scales[i - 1] - 1.0);
  }
  const int n = field.max_mode();
  SpectralField out = field;
  for (int ell = -n; ell <= n; ++ell)
    out.coeffs()(n + ell) *= scales[targets.partition.group_of(ell) - 1];
  return out;
}

SpectralField damp(const SpectralField& field, const DampingFilter& filter) {
  check_partition_fits(filter.partition, field.max_mode(), "damp");
  const int n = field.max_mode();
  SpectralField out = field;
  for (int ell = -n; ell <= n; ++ell)
    out.coeffs()(n + ell) *= filter.factors[filter.partition.group_of(ell) - 1];
  return out;
}

double solve_multiplier(const std::function<double(double)>& g, double target,
                        double lambda_lo, double lambda_hi) {
  double lo = lambda_lo, hi = lambda_hi;
  double f_lo = g(lo) - target;
  double f_hi = g(hi) - target;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (f_lo * f_hi > 0.0)
    throw std::invalid_argument("solve_multiplier: bracket has no sign change");

  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  double lambda = 0.5 * (lo + hi);
  double residual = g(lambda) - target;
  for (int iter = 0; iter < 50; ++iter) {
    if (std::abs(hi - lo) <= 1e-12 * std::max(scale, std::abs(lambda))) break;
    // Newton step from a centered difference, damped into the bracket.
    const double h = 1e-7 * std::max(std::abs(lambda), scale * 1e-6);
    const double slope = (g(lambda + h) - g(lambda - h)) / (2.0 * h);
    double next = slope != 0.0 ? lambda - residual / slope : lambda;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    double f_next = g(next) - target;
    int damping = 0;
    while (std::abs(f_next) > std::abs(residual) && damping < 8) {
      next = 0.5 * (next + lambda);
      f_next = g(next) - target;
      ++damping;
    }
    if (f_next == 0.0) return next;
    if (f_lo * f_next < 0.0) {
      hi = next;
      f_hi = f_next;
    } else {
      lo = next;
      f_lo = f_next;
    }
    lambda = next;
    residual = f_next;
  }
  return lambda;
}

}  // namespace paraspec
