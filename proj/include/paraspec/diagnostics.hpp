#pragma once

#include "paraspec/parareal.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace paraspec {

enum class ErrorFlag { ok, divergent, absolute };

std::string to_string(ErrorFlag flag);

/// Relative L2 errors of every iterate against the fine sequential reference.
/// Divergent (non-finite) entries carry the marker instead of a number; a
/// zero-norm reference window falls back to absolute error with its own flag.
struct ErrorReport {
  std::vector<double> times;                   // T_n
  std::vector<std::vector<double>> rel_error;  // [k][n]
  std::vector<std::vector<ErrorFlag>> flags;   // [k][n]
  std::vector<double> max_error;               // per k, divergent excluded
  std::vector<bool> has_divergent;             // per k

  int iterations() const { return static_cast<int>(rel_error.size()) - 1; }
};

/// e(k, n) = ||u_n^k - ref_n|| / ||ref_n||, phase-space norm for wave states.
/// A pure function of the states: recomputing from stored artifacts gives
/// bit-identical results.
template <class State>
ErrorReport relative_error(const IterationTrace<State>& trace,
                           const std::vector<State>& reference);

/// Per-(k, n) Hamiltonian and its relative deviation from H(y0).
struct EnergyReport {
  double reference_energy = 0.0;
  std::vector<std::vector<double>> hamiltonian;    // [k][n]
  std::vector<std::vector<double>> rel_deviation;  // [k][n]
};

EnergyReport energy_report(const IterationTrace<WaveState>& trace,
                           const WaveState& y0, double wave_speed);
/// The energy report is only defined for the wave problem.
EnergyReport energy_report(const IterationTrace<SpectralField>& trace,
                           const SpectralField& y0, double wave_speed);

/// Shortest round-trip decimal formatting used in every CSV column.
std::string format_double(double value);
double parse_double(const std::string& text);

/// Writes errors.csv, energy.csv (wave runs), lambda.csv (projected variants)
/// and run.json into the directory, creating it if needed.
template <class State>
void emit_csv(const IterationTrace<State>& trace, const ErrorReport& report,
              const EnergyReport* energy, const nlohmann::json& resolved_config,
              const std::filesystem::path& directory);

/// Trace and snapshot state files (iteration,window,component,mode,re,im and
/// window,time,component,mode,re,im); these make `compare` self-contained.
template <class State>
void write_trace_states(const IterationTrace<State>& trace,
                        const std::filesystem::path& file);
template <class State>
void write_snapshots(const std::vector<State>& snapshots, const Schedule& schedule,
                     const std::filesystem::path& file);

template <class State>
IterationTrace<State> read_trace_states(const std::filesystem::path& file,
                                        double period, const Schedule& schedule);
template <class State>
std::vector<State> read_snapshots(const std::filesystem::path& file, double period);

}  // namespace paraspec
