#pragma once

#include "paraspec/group_partition.hpp"
#include "paraspec/propagators.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace paraspec {

/// Raised when a constraint manifold is unreachable along the gradient ray
/// (no real multiplier, or a zero component asked to carry energy).
class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(int group, const std::string& what)
      : std::runtime_error(what), group_(group) {}
  int group() const { return group_; }

 private:
  int group_ = 0;
};

/// Per-group targets for a quadratic constraint: wave group Hamiltonians H_i,
/// or squared L2 norms for the Burgers group manifolds.
struct EnergyTargets {
  GroupPartition partition;
  std::vector<double> targets;

  EnergyTargets(GroupPartition partition_, std::vector<double> targets_);
};

/// Spectral damping Phi: group 1 untouched, group i scaled by f(i) in (0, 1].
struct DampingFilter {
  GroupPartition partition;
  std::vector<double> factors;

  DampingFilter(GroupPartition partition_, std::vector<double> factors_);

  /// f(i) = 1/(i^2 + 1) for i >= 2.
  static DampingFilter default_rule(GroupPartition partition);
  /// f(i) = 1/(3i + 1) for i >= 2, the choice used with two groups.
  static DampingFilter two_group_rule(GroupPartition partition);

  bool is_identity() const;
};

/// Energy of one mode oscillator: |v|^2 + (2*pi/T)^2 l^2 c^2 |u|^2. Each is
/// individually conserved by the exact mode flow (2N+1 invariants).
double mode_energy(Complex u_hat, Complex v_hat, int ell, double wave_speed,
                   double period);

/// Wave Hamiltonian H = ||du/dt||^2 + c^2 ||du/dx||^2, evaluated as
/// T * sum_l mode_energy_l so that it both matches the norm form through
/// Parseval and splits additively over the modes.
double hamiltonian(const WaveState& state, double wave_speed);

/// T-scaled mode-energy sums per group; they add up to the Hamiltonian.
std::vector<double> group_energies(const WaveState& state, double wave_speed,
                                   const GroupPartition& partition);
double group_energy(const WaveState& state, double wave_speed,
                    const GroupPartition& partition, int group);

/// Targets that pin every group energy to its value in the given state
/// (for the wave: the invariants of the initial data).
EnergyTargets wave_group_targets(const WaveState& state, double wave_speed,
                                 const GroupPartition& partition);

/// Squared L2 norms of the group components; they add up to l2_norm_sq.
std::vector<double> group_norms_sq(const SpectralField& field,
                                   const GroupPartition& partition);

/// Standard projection onto the intersection of the group energy manifolds:
/// per group solves H_i(w + lambda_i grad H_i(w)) = target_i exactly (the
/// constraint is quadratic in lambda_i) and keeps the real root of smallest
/// magnitude. grad H_i acts per mode as (u, v) -> (2 (2*pi*l/T)^2 c^2 u, 2 v).
/// Groups with zero component and zero target pass through; an unreachable
/// target throws ProjectionError with the group index.
WaveState project_wave_groups(const WaveState& state, const EnergyTargets& targets,
                              double wave_speed,
                              std::vector<double>* lambdas = nullptr);

/// Same map computed with the iterative multiplier solve instead of the
/// closed form; kept for constraints that are not quadratic. Test use only.
WaveState project_wave_groups_iterative(const WaveState& state,
                                        const EnergyTargets& targets,
                                        double wave_speed,
                                        std::vector<double>* lambdas = nullptr);

/// Group-manifold targets for the Burgers iterate: the unknown fine image of
/// the current iterate is approximated through the stored fine image of the
/// previous one,
///   target_i = ( ||P_i F(u_n^k)|| / ||u_n^k|| * ||u_n^{k+1}|| )^2.
EnergyTargets burgers_group_targets(const SpectralField& u_prev_iter,
                                    const SpectralField& fine_of_prev_iter,
                                    const SpectralField& u_current_iter,
                                    const GroupPartition& partition);

/// Standard projection for pure norm constraints: since grad||v||^2 is
/// parallel to v, the per-group solve reduces to rescaling the group
/// component to the target norm. Zero targets zero the group; a zero
/// component with a positive target throws ProjectionError. The reported
/// lambda is the multiplier of the v + lambda * 2v form, (scale - 1)/2.
SpectralField project_norm_groups(const SpectralField& field,
                                  const EnergyTargets& targets,
                                  std::vector<double>* lambdas = nullptr);

/// Applies the damping factors groupwise; group 1 is never touched.
SpectralField damp(const SpectralField& field, const DampingFilter& filter);

/// Damped Newton on g(lambda) = target (max 50 iterations, relative tolerance
/// 1e-12) falling back to bisection on [lo, hi] when Newton stalls. The
/// bracket must contain a sign change of the residual.
double solve_multiplier(const std::function<double(double)>& g, double target,
                        double lambda_lo, double lambda_hi);

}  // namespace paraspec
