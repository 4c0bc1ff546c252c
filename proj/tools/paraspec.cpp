#include "paraspec/config.hpp"
#include "paraspec/diagnostics.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace paraspec;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ExperimentConfig load_config(const fs::path& path) {
  return parse_config(read_file(path));
}

IterationTrace<WaveState> dispatch_run(const WaveState& y0, const PararealRun& run) {
  return run_wave_parareal(y0, run);
}

IterationTrace<SpectralField> dispatch_run(const SpectralField& y0,
                                           const PararealRun& run) {
  return run_field_parareal(y0, run);
}

void print_summary(const ErrorReport& report) {
  for (int k = 0; k <= report.iterations(); ++k) {
    std::cout << "k=" << k << " max_rel_error=" << format_double(report.max_error[k]);
    if (report.has_divergent[k]) std::cout << " (divergent windows excluded)";
    std::cout << '\n';
  }
}

template <class State>
int execute_run(const ExperimentConfig& config, const State& y0) {
  const PararealRun run = make_run(config);
  const fs::path dir = config.out_dir;
  fs::create_directories(dir);

  const FineReference<State> reference = fine_sequential(y0, run.schedule, run.fine);
  IterationTrace<State> trace = dispatch_run(y0, run);

  write_trace_states(trace, dir / "trace_states.csv");
  write_snapshots(reference.snapshots, run.schedule, dir / "reference_snapshots.csv");

  int divergent = 0, failed_projections = 0;
  for (const auto& row : trace.diag)
    for (const WindowDiag& d : row) {
      divergent += d.divergent ? 1 : 0;
      failed_projections += d.projection_failed ? 1 : 0;
    }
  if (divergent > 0)
    std::cerr << "warning: " << divergent
              << " (iteration, window) states diverged; carried with flags\n";
  if (failed_projections > 0)
    std::cerr << "warning: " << failed_projections
              << " projections failed; states passed through unprojected\n";

  if (reference.diverged_after) {
    std::cerr << "warning: fine reference diverged after window "
              << *reference.diverged_after
              << "; writing states only, no error report\n";
    std::ofstream out(dir / "run.json");
    out << to_json(config).dump(2) << '\n';
    return 0;
  }

  const ErrorReport report = relative_error(trace, reference.snapshots);
  if constexpr (std::is_same_v<State, WaveState>) {
    const EnergyReport energy = energy_report(trace, y0, config.c);
    emit_csv(trace, report, &energy, to_json(config), dir);
  } else {
    emit_csv(trace, report, nullptr, to_json(config), dir);
  }
  print_summary(report);
  return 0;
}

int run_experiment(const ExperimentConfig& config) {
  if (config.kind == ProblemKind::wave)
    return execute_run(config, make_wave_initial(config));
  return execute_run(config, make_field_initial(config));
}

int run_reference(const ExperimentConfig& config) {
  const PararealRun run = make_run(config);
  const fs::path dir = config.out_dir;
  fs::create_directories(dir);
  std::optional<int> diverged;
  if (config.kind == ProblemKind::wave) {
    const auto reference =
        fine_sequential(make_wave_initial(config), run.schedule, run.fine);
    write_snapshots(reference.snapshots, run.schedule, dir / "snapshots.csv");
    diverged = reference.diverged_after;
  } else {
    const auto reference =
        fine_sequential(make_field_initial(config), run.schedule, run.fine);
    write_snapshots(reference.snapshots, run.schedule, dir / "snapshots.csv");
    diverged = reference.diverged_after;
  }
  std::ofstream out(dir / "run.json");
  out << to_json(config).dump(2) << '\n';
  if (diverged)
    std::cerr << "warning: fine sweep diverged after window " << *diverged << '\n';
  return 0;
}

fs::path find_snapshots(const fs::path& dir) {
  if (fs::exists(dir / "snapshots.csv")) return dir / "snapshots.csv";
  if (fs::exists(dir / "reference_snapshots.csv"))
    return dir / "reference_snapshots.csv";
  throw std::runtime_error("no snapshots.csv or reference_snapshots.csv in " +
                           dir.string());
}

template <class State>
int execute_compare(const ExperimentConfig& config, const fs::path& trace_dir,
                    const fs::path& reference_dir, const std::string& out_dir) {
  const Schedule schedule(config.t_final, n_windows(config));
  const IterationTrace<State> trace = read_trace_states<State>(
      trace_dir / "trace_states.csv", config.period, schedule);
  const std::vector<State> reference =
      read_snapshots<State>(find_snapshots(reference_dir), config.period);
  const ErrorReport report = relative_error(trace, reference);
  print_summary(report);
  if (!out_dir.empty()) {
    emit_csv(trace, report, nullptr, to_json(config), out_dir);
  } else {
    std::cout << "iteration,window,time,rel_error,flag\n";
    for (int k = 0; k <= report.iterations(); ++k)
      for (std::size_t n = 0; n < report.times.size(); ++n)
        std::cout << k << ',' << n << ',' << format_double(report.times[n]) << ','
                  << format_double(report.rel_error[k][n]) << ','
                  << to_string(report.flags[k][n]) << '\n';
  }
  return 0;
}

int run_compare(const fs::path& trace_dir, const fs::path& reference_dir,
                const std::string& out_dir) {
  const ExperimentConfig config = load_config(trace_dir / "run.json");
  if (config.kind == ProblemKind::wave)
    return execute_compare<WaveState>(config, trace_dir, reference_dir, out_dir);
  return execute_compare<SpectralField>(config, trace_dir, reference_dir, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parareal experiments for periodic spectral model problems"};
  app.require_subcommand(1);

  std::string config_file, out_dir, scale = "desk", preset_name;
  std::string trace_dir, reference_dir;
  int workers = 0;

  CLI::App* cmd_run = app.add_subcommand("run", "run an experiment from a config");
  cmd_run->add_option("--config", config_file, "JSON config file")->required();
  cmd_run->add_option("--workers", workers, "worker threads (1 = sequential)");
  cmd_run->add_option("--out", out_dir, "output directory override");

  CLI::App* cmd_preset =
      app.add_subcommand("preset", "materialize a named setup and run it");
  cmd_preset->add_option("name", preset_name, "preset name")->required();
  cmd_preset->add_option("--scale", scale, "paper or desk")->required();
  cmd_preset->add_option("--workers", workers, "worker threads");
  cmd_preset->add_option("--out", out_dir, "output directory override");

  CLI::App* cmd_reference =
      app.add_subcommand("reference", "fine sequential sweep only");
  cmd_reference->add_option("--config", config_file, "JSON config file")->required();
  cmd_reference->add_option("--out", out_dir, "output directory")->required();

  CLI::App* cmd_compare =
      app.add_subcommand("compare", "recompute errors from stored artifacts");
  cmd_compare->add_option("--trace", trace_dir, "directory of a previous run")
      ->required();
  cmd_compare->add_option("--reference", reference_dir, "directory with snapshots")
      ->required();
  cmd_compare->add_option("--out", out_dir, "write errors.csv here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed() || cmd_preset->parsed()) {
      ExperimentConfig config = cmd_run->parsed()
                                    ? load_config(config_file)
                                    : preset(preset_name, scale);
      if (workers > 0) config.workers = workers;
      if (!out_dir.empty()) config.out_dir = out_dir;
      if (cmd_preset->parsed()) {
        std::filesystem::create_directories(config.out_dir);
        std::ofstream materialized(std::filesystem::path(config.out_dir) /
                                   "config.json");
        materialized << to_json(config).dump(2) << '\n';
      }
      return run_experiment(config);
    }
    if (cmd_reference->parsed()) {
      ExperimentConfig config = load_config(config_file);
      config.out_dir = out_dir;
      return run_reference(config);
    }
    if (cmd_compare->parsed()) return run_compare(trace_dir, reference_dir, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
