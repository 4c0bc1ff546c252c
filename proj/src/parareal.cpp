#include "paraspec/parareal.hpp"

namespace paraspec {

namespace {

void require_partition(const PararealRun& run, int state_band) {
  if (!run.partition)
    throw std::invalid_argument("parareal: projected variant needs a partition");
  if (run.partition->max_mode() != state_band)
    throw std::invalid_argument("parareal: partition band does not match the state");
}

}  // namespace

IterationTrace<WaveState> run_wave_parareal(const WaveState& y0,
                                            const PararealRun& run) {
  if (run.fine.problem.kind != ProblemKind::wave)
    throw std::invalid_argument("run_wave_parareal: wave problem required");
  const double c = run.fine.problem.wave_speed;
  EngineHooks<WaveState> hooks;
  hooks.energy = [c](const WaveState& s) { return hamiltonian(s, c); };
  if (run.variant != Variant::plain) {
    if (run.variant == Variant::projected_damped)
      throw std::invalid_argument(
          "run_wave_parareal: damping is defined for scalar problems only");
    require_partition(run, y0.max_mode());
    const auto targets = std::make_shared<const EnergyTargets>(
        wave_group_targets(y0, c, *run.partition));
    auto project = [targets, c](const WaveState& tilde) {
      ProjectionOutcome<WaveState> out{tilde, {}, false};
      try {
        std::vector<double> lambdas;
        out.state = project_wave_groups(tilde, *targets, c, &lambdas);
        out.lambdas = std::move(lambdas);
      } catch (const ProjectionError&) {
        out.state = tilde;
        out.failed = true;
      }
      return out;
    };
    hooks.project = [project](const WaveState& tilde, const WaveState&,
                              const WaveState&, const WaveState&) {
      return project(tilde);
    };
    hooks.project_init = project;
  }
  return run_parareal(y0, run, hooks);
}

IterationTrace<SpectralField> run_field_parareal(const SpectralField& y0,
                                                 const PararealRun& run) {
  const ProblemKind kind = run.fine.problem.kind;
  if (kind == ProblemKind::wave)
    throw std::invalid_argument("run_field_parareal: scalar problem required");
  EngineHooks<SpectralField> hooks;
  if (run.variant != Variant::plain) {
    if (kind != ProblemKind::burgers)
      throw std::invalid_argument(
          "run_field_parareal: projected variants are defined for burgers only");
    require_partition(run, y0.max_mode());
    const GroupPartition partition = *run.partition;
    hooks.project = [partition](const SpectralField& tilde,
                                const SpectralField& prev_iter,
                                const SpectralField& fine_image,
                                const SpectralField& current_prev) {
      ProjectionOutcome<SpectralField> out{tilde, {}, false};
      try {
        const EnergyTargets targets =
            burgers_group_targets(prev_iter, fine_image, current_prev, partition);
        std::vector<double> lambdas;
        out.state = project_norm_groups(tilde, targets, &lambdas);
        out.lambdas = std::move(lambdas);
      } catch (const ProjectionError&) {
        out.state = tilde;
        out.failed = true;
      } catch (const std::invalid_argument&) {
        // Degenerate context (zero-norm predecessor): carry unprojected.
        out.state = tilde;
        out.failed = true;
      }
      return out;
    };
    if (run.variant == Variant::projected_damped) {
      if (!run.filter)
        throw std::invalid_argument("parareal: damped variant needs a filter");
      if (run.filter->partition.max_mode() != y0.max_mode())
        throw std::invalid_argument("parareal: filter band does not match the state");
      const DampingFilter filter = *run.filter;
      hooks.damp = [filter](const SpectralField& s) { return damp(s, filter); };
    }
  }
  return run_parareal(y0, run, hooks);
}

}  // namespace paraspec
