#pragma once

#include "paraspec/manifold.hpp"
#include "paraspec/propagators.hpp"
#include "paraspec/worker_pool.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace paraspec {

enum class Variant { plain, projected, projected_damped };

/// Uniform window grid T_n = n * T / N.
struct Schedule {
  double t_final = 0.0;
  int n_windows = 0;

  Schedule() = default;
  Schedule(double t_final_, int n_windows_)
      : t_final(t_final_), n_windows(n_windows_) {
    if (t_final <= 0.0 || n_windows < 1)
      throw std::invalid_argument("schedule: need t_final > 0 and n_windows >= 1");
  }

  double window_length() const { return t_final / n_windows; }
  double time_at(int n) const { return window_length() * n; }
};

/// Complete description of one parareal computation.
struct PararealRun {
  Schedule schedule;
  PropagatorSpec coarse;
  PropagatorSpec fine;
  Variant variant = Variant::plain;
  int iterations = 0;  // K
  std::optional<GroupPartition> partition;  // projected variants
  std::optional<DampingFilter> filter;      // damped variant
  int workers = 1;
};

/// Diagnostics for one (iteration, window) slot. States follow the measured
/// convention: after the projection, before any damping.
struct WindowDiag {
  double norm_sq = 0.0;
  double energy = 0.0;               // wave runs
  std::vector<double> lambdas;       // projected variants
  double fine_image_norm_sq = -1.0;  // ||F(u_n^k)||^2, known once sweep k+1 ran
  bool divergent = false;
  bool projection_failed = false;
};

template <class State>
struct IterationTrace {
  Schedule schedule;
  std::vector<std::vector<State>> states;     // [k][n], k = 0..K, n = 0..N
  std::vector<std::vector<WindowDiag>> diag;  // same shape

  int iterations() const { return static_cast<int>(states.size()) - 1; }
};

template <class State>
struct FineReference {
  std::vector<State> snapshots;  // at T_0 .. T_N, cut short on divergence
  std::optional<int> diverged_after;  // last window index that stayed finite
};

/// Sequential fine sweep recording the state at every window time.
template <class State>
FineReference<State> fine_sequential(const State& y0, const Schedule& schedule,
                                     const PropagatorSpec& fine) {
  FineReference<State> ref;
  ref.snapshots.reserve(schedule.n_windows + 1);
  ref.snapshots.push_back(y0);
  State current = y0;
  for (int n = 0; n < schedule.n_windows; ++n) {
    current = advance(current, schedule.time_at(n), schedule.time_at(n + 1), fine);
    if (!all_finite(current)) {
      ref.diverged_after = n;
      break;
    }
    ref.snapshots.push_back(current);
  }
  return ref;
}

template <class State>
struct ProjectionOutcome {
  State state;                  // projected, or passed through on failure
  std::vector<double> lambdas;  // per group
  bool failed = false;
};

/// Problem-family wiring consumed by the generic engine. Null members switch
/// the corresponding phase off.
template <class State>
struct EngineHooks {
  // project(tilde, u_n^k, F(u_n^k), u_n^{k+1}); the context feeds the
  // on-the-fly Burgers targets and is ignored by the fixed-manifold wave map.
  std::function<ProjectionOutcome<State>(const State&, const State&, const State&,
                                         const State&)>
      project;
  // Projection applied to the iteration-0 coarse sweep (wave variants only).
  std::function<ProjectionOutcome<State>(const State&)> project_init;
  std::function<State(const State&)> damp;   // damped variant
  std::function<double(const State&)> energy;  // wave Hamiltonian
};

/// Parareal driver: coarse initialization, then K sweeps of
///   u_{n+1}^{k+1} = G(u_n^{k+1}) + F(u_n^k) - G(u_n^k)
/// with the variant's projection/damping phases. Fine and corrector coarse
/// images are computed per window in the parallel phase (coarse images reuse
/// the previous sweep's predictor values whenever the inputs are the same
/// states); the predictor sweep itself is sequential. The corrector is
/// evaluated as F + (G_new - G_old) so that a bitwise-equal coarse pair
/// cancels exactly. Non-finite windows are flagged and carried, never fatal.
template <class State>
IterationTrace<State> run_parareal(const State& y0, const PararealRun& run,
                                   const EngineHooks<State>& hooks) {
  const Schedule& sched = run.schedule;
  const int num_windows = sched.n_windows;
  const int iterations = run.iterations;
  const bool damped = static_cast<bool>(hooks.damp);
  if (iterations < 0) throw std::invalid_argument("parareal: iterations must be >= 0");
  if (run.coarse.dt < run.fine.dt)
    throw std::invalid_argument("parareal: coarse step below fine step");
  window_step_count(0.0, sched.window_length(), run.coarse.dt);
  window_step_count(0.0, sched.window_length(), run.fine.dt);

  IterationTrace<State> trace;
  trace.schedule = sched;
  trace.states.assign(iterations + 1, {});
  trace.diag.assign(iterations + 1,
                    std::vector<WindowDiag>(num_windows + 1));

  auto measure = [&](int k, int n, const State& s, std::vector<double> lambdas,
                     bool proj_failed) {
    WindowDiag& d = trace.diag[k][n];
    d.norm_sq = l2_norm_sq(s);
    if (hooks.energy) d.energy = hooks.energy(s);
    d.lambdas = std::move(lambdas);
    d.divergent = !all_finite(s);
    d.projection_failed = proj_failed;
  };

  // Iteration 0: sequential coarse sweep (projected for wave variants); the
  // damped variant additionally stores damped copies for its coarse calls.
  std::vector<State> current;
  current.reserve(num_windows + 1);
  current.push_back(y0);
  measure(0, 0, y0, {}, false);
  std::vector<State> damped_copies;
  if (damped) damped_copies.push_back(hooks.damp(y0));

  std::vector<State> predictor_cache;
  predictor_cache.reserve(num_windows);
  for (int n = 0; n < num_windows; ++n) {
    State g = advance(current[n], sched.time_at(n), sched.time_at(n + 1), run.coarse);
    predictor_cache.push_back(g);
    std::vector<double> lambdas;
    bool proj_failed = false;
    if (hooks.project_init && all_finite(g)) {
      ProjectionOutcome<State> outcome = hooks.project_init(g);
      proj_failed = outcome.failed;
      lambdas = std::move(outcome.lambdas);
      g = std::move(outcome.state);
    }
    current.push_back(std::move(g));
    measure(0, n + 1, current.back(), std::move(lambdas), proj_failed);
    if (damped) damped_copies.push_back(hooks.damp(current.back()));
  }
  trace.states[0] = std::move(current);

  // The iteration-0 predictor ran on undamped states, but the k = 1 corrector
  // needs coarse images of the damped copies; invalidate the cache then.
  bool cache_matches_corrector = !damped;

  std::vector<State> fine_images(num_windows, y0);
  std::vector<State> corrector_g(num_windows, y0);
  for (int k = 0; k < iterations; ++k) {
    const std::vector<State>& prev = trace.states[k];
    const bool use_cache = cache_matches_corrector;
    parallel_for(num_windows, run.workers, [&](int n) {
      fine_images[n] =
          advance(prev[n], sched.time_at(n), sched.time_at(n + 1), run.fine);
      if (!use_cache)
        corrector_g[n] = advance(damped ? damped_copies[n] : prev[n],
                                 sched.time_at(n), sched.time_at(n + 1), run.coarse);
    });
    if (use_cache) corrector_g.swap(predictor_cache);
    for (int n = 0; n < num_windows; ++n)
      trace.diag[k][n].fine_image_norm_sq = l2_norm_sq(fine_images[n]);

    std::vector<State> next;
    next.reserve(num_windows + 1);
    next.push_back(y0);
    measure(k + 1, 0, y0, {}, false);
    std::vector<State> next_damped;
    if (damped) {
      next_damped.reserve(num_windows + 1);
      next_damped.push_back(damped_copies[0]);  // Phi(y0), unchanged across k
    }

    predictor_cache.clear();
    for (int n = 0; n < num_windows; ++n) {
      State g_new = advance(damped ? next_damped[n] : next[n], sched.time_at(n),
                            sched.time_at(n + 1), run.coarse);
      State result = fine_images[n] + (g_new - corrector_g[n]);
      predictor_cache.push_back(std::move(g_new));
      std::vector<double> lambdas;
      bool proj_failed = false;
      if (hooks.project && all_finite(result)) {
        ProjectionOutcome<State> outcome =
            hooks.project(result, prev[n], fine_images[n], next[n]);
        proj_failed = outcome.failed;
        lambdas = std::move(outcome.lambdas);
        result = std::move(outcome.state);
      }
      next.push_back(std::move(result));
      measure(k + 1, n + 1, next.back(), std::move(lambdas), proj_failed);
      if (damped) next_damped.push_back(hooks.damp(next.back()));
    }
    trace.states[k + 1] = std::move(next);
    if (damped) damped_copies = std::move(next_damped);
    cache_matches_corrector = true;
  }
  return trace;
}

/// Wave-equation run: plain, or projected onto the initial per-group
/// Hamiltonian levels (the invariants of the semi-discrete flow).
IterationTrace<WaveState> run_wave_parareal(const WaveState& y0,
                                            const PararealRun& run);

/// Scalar-field run: parabolic (plain only) or Burgers, whose projected
/// variants rescale group norms to targets extrapolated from the previous
/// iterate's fine image; iteration 0 stays unprojected (the targets are not
/// defined before a fine image exists).
IterationTrace<SpectralField> run_field_parareal(const SpectralField& y0,
                                                 const PararealRun& run);

}  // namespace paraspec
