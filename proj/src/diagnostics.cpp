#include "paraspec/diagnostics.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace paraspec {

namespace {

template <class State>
double state_norm(const State& state) {
  return std::sqrt(l2_norm_sq(state));
}

void check_stream(const std::ostream& out, const std::filesystem::path& path) {
  if (!out) throw std::runtime_error("failed to write " + path.string());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

struct StateRow {
  int a = 0;       // iteration (trace) or window (snapshots)
  int b = 0;       // window (trace only)
  int component = 0;
  int mode = 0;
  Complex value;
};

int component_index(const std::string& name, const std::filesystem::path& path) {
  if (name == "u") return 0;
  if (name == "v") return 1;
  throw std::runtime_error("bad component in " + path.string());
}

std::vector<StateRow> read_state_rows(const std::filesystem::path& path,
                                      bool trace_layout) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<StateRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 6) throw std::runtime_error("bad row in " + path.string());
    StateRow row;
    row.a = std::stoi(f[0]);
    if (trace_layout)
      row.b = std::stoi(f[1]);  // otherwise f[1] is the snapshot time
    row.component = component_index(f[2], path);
    row.mode = std::stoi(f[3]);
    row.value = Complex{parse_double(f[4]), parse_double(f[5])};
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string to_string(ErrorFlag flag) {
  switch (flag) {
    case ErrorFlag::divergent: return "divergent";
    case ErrorFlag::absolute: return "abs";
    default: return "";
  }
}

std::string format_double(double value) {
  std::array<char, 40> buffer;
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{})
    throw std::runtime_error("not a number: " + text);
  return value;
}

template <class State>
ErrorReport relative_error(const IterationTrace<State>& trace,
                           const std::vector<State>& reference) {
  const int num_windows = trace.schedule.n_windows;
  if (static_cast<int>(reference.size()) != num_windows + 1)
    throw std::invalid_argument("relative_error: reference does not match the schedule");
  const int iterations = trace.iterations();

  ErrorReport report;
  report.times.resize(num_windows + 1);
  for (int n = 0; n <= num_windows; ++n) report.times[n] = trace.schedule.time_at(n);
  report.rel_error.assign(iterations + 1, std::vector<double>(num_windows + 1, 0.0));
  report.flags.assign(iterations + 1,
                      std::vector<ErrorFlag>(num_windows + 1, ErrorFlag::ok));
  report.max_error.assign(iterations + 1, 0.0);
  report.has_divergent.assign(iterations + 1, false);

  for (int k = 0; k <= iterations; ++k) {
    for (int n = 0; n <= num_windows; ++n) {
      const State& state = trace.states[k][n];
      if (!all_finite(state)) {
        report.rel_error[k][n] = std::numeric_limits<double>::quiet_NaN();
        report.flags[k][n] = ErrorFlag::divergent;
        report.has_divergent[k] = true;
        continue;
      }
      const double diff = state_norm<State>(state - reference[n]);
      const double ref_norm = state_norm(reference[n]);
      if (ref_norm == 0.0) {
        report.rel_error[k][n] = diff;
        report.flags[k][n] = ErrorFlag::absolute;
      } else {
        report.rel_error[k][n] = diff / ref_norm;
      }
      report.max_error[k] = std::max(report.max_error[k], report.rel_error[k][n]);
    }
  }
  return report;
}

EnergyReport energy_report(const IterationTrace<WaveState>& trace,
                           const WaveState& y0, double wave_speed) {
  const double h0 = hamiltonian(y0, wave_speed);
  if (h0 <= 0.0)
    throw std::invalid_argument("energy_report: initial state carries no energy");
  EnergyReport report;
  report.reference_energy = h0;
  const int iterations = trace.iterations();
  const int num_windows = trace.schedule.n_windows;
  report.hamiltonian.assign(iterations + 1, std::vector<double>(num_windows + 1, 0.0));
  report.rel_deviation.assign(iterations + 1,
                              std::vector<double>(num_windows + 1, 0.0));
  for (int k = 0; k <= iterations; ++k)
    for (int n = 0; n <= num_windows; ++n) {
      const double h = hamiltonian(trace.states[k][n], wave_speed);
      report.hamiltonian[k][n] = h;
      report.rel_deviation[k][n] = std::abs(h - h0) / h0;
    }
  return report;
}

EnergyReport energy_report(const IterationTrace<SpectralField>&,
                           const SpectralField&, double) {
  throw std::invalid_argument("energy_report: defined for the wave problem only");
}

template <class State>
void emit_csv(const IterationTrace<State>& trace, const ErrorReport& report,
              const EnergyReport* energy, const nlohmann::json& resolved_config,
              const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  const int iterations = trace.iterations();
  const int num_windows = trace.schedule.n_windows;

  {
    std::ofstream out = open_out(directory / "errors.csv");
    out << "iteration,window,time,rel_error,flag\n";
    for (int k = 0; k <= iterations; ++k)
      for (int n = 0; n <= num_windows; ++n)
        out << k << ',' << n << ',' << format_double(report.times[n]) << ','
            << format_double(report.rel_error[k][n]) << ','
            << to_string(report.flags[k][n]) << '\n';
    check_stream(out, directory / "errors.csv");
  }

  if (energy) {
    std::ofstream out = open_out(directory / "energy.csv");
    out << "iteration,window,time,H,rel_deviation\n";
    for (int k = 0; k <= iterations; ++k)
      for (int n = 0; n <= num_windows; ++n)
        out << k << ',' << n << ',' << format_double(report.times[n]) << ','
            << format_double(energy->hamiltonian[k][n]) << ','
            << format_double(energy->rel_deviation[k][n]) << '\n';
    check_stream(out, directory / "energy.csv");
  }

  const std::string variant =
      resolved_config.contains("method") && resolved_config["method"].contains("variant")
          ? resolved_config["method"]["variant"].get<std::string>()
          : "plain";
  if (variant != "plain") {
    std::ofstream out = open_out(directory / "lambda.csv");
    out << "iteration,window,group,lambda\n";
    for (int k = 0; k <= iterations; ++k)
      for (int n = 0; n <= num_windows; ++n) {
        const std::vector<double>& lambdas = trace.diag[k][n].lambdas;
        for (std::size_t g = 0; g < lambdas.size(); ++g)
          out << k << ',' << n << ',' << g + 1 << ','
              << format_double(lambdas[g]) << '\n';
      }
    check_stream(out, directory / "lambda.csv");
  }

  {
    std::ofstream out = open_out(directory / "run.json");
    out << resolved_config.dump(2) << '\n';
    check_stream(out, directory / "run.json");
  }
}

namespace {

void write_field_rows(std::ostream& out, const std::string& prefix,
                      const char* component, const SpectralField& field) {
  const int n = field.max_mode();
  for (int ell = -n; ell <= n; ++ell) {
    const Complex c = field.coeffs()(ell + n);
    out << prefix << component << ',' << ell << ',' << format_double(c.real())
        << ',' << format_double(c.imag()) << '\n';
  }
}

}  // namespace

template <>
void write_trace_states<SpectralField>(const IterationTrace<SpectralField>& trace,
                                       const std::filesystem::path& file) {
  std::ofstream out = open_out(file);
  out << "iteration,window,component,mode,re,im\n";
  for (int k = 0; k <= trace.iterations(); ++k)
    for (int n = 0; n <= trace.schedule.n_windows; ++n) {
      const std::string prefix = std::to_string(k) + ',' + std::to_string(n) + ',';
      write_field_rows(out, prefix, "u", trace.states[k][n]);
    }
  check_stream(out, file);
}

template <>
void write_trace_states<WaveState>(const IterationTrace<WaveState>& trace,
                                   const std::filesystem::path& file) {
  std::ofstream out = open_out(file);
  out << "iteration,window,component,mode,re,im\n";
  for (int k = 0; k <= trace.iterations(); ++k)
    for (int n = 0; n <= trace.schedule.n_windows; ++n) {
      const std::string prefix = std::to_string(k) + ',' + std::to_string(n) + ',';
      write_field_rows(out, prefix, "u", trace.states[k][n].u);
      write_field_rows(out, prefix, "v", trace.states[k][n].v);
    }
  check_stream(out, file);
}

template <>
void write_snapshots<SpectralField>(const std::vector<SpectralField>& snapshots,
                                    const Schedule& schedule,
                                    const std::filesystem::path& file) {
  std::ofstream out = open_out(file);
  out << "window,time,component,mode,re,im\n";
  for (std::size_t n = 0; n < snapshots.size(); ++n) {
    const std::string prefix = std::to_string(n) + ',' +
                               format_double(schedule.time_at(static_cast<int>(n))) +
                               ',';
    write_field_rows(out, prefix, "u", snapshots[n]);
  }
  check_stream(out, file);
}

template <>
void write_snapshots<WaveState>(const std::vector<WaveState>& snapshots,
                                const Schedule& schedule,
                                const std::filesystem::path& file) {
  std::ofstream out = open_out(file);
  out << "window,time,component,mode,re,im\n";
  for (std::size_t n = 0; n < snapshots.size(); ++n) {
    const std::string prefix = std::to_string(n) + ',' +
                               format_double(schedule.time_at(static_cast<int>(n))) +
                               ',';
    write_field_rows(out, prefix, "u", snapshots[n].u);
    write_field_rows(out, prefix, "v", snapshots[n].v);
  }
  check_stream(out, file);
}

namespace {

struct StateGrid {
  int max_a = 0, max_b = 0, max_mode = 0, max_component = 0;
};

StateGrid grid_extent(const std::vector<StateRow>& rows) {
  StateGrid g;
  for (const StateRow& row : rows) {
    g.max_a = std::max(g.max_a, row.a);
    g.max_b = std::max(g.max_b, row.b);
    g.max_mode = std::max(g.max_mode, std::abs(row.mode));
    g.max_component = std::max(g.max_component, row.component);
  }
  return g;
}

}  // namespace

template <>
IterationTrace<SpectralField> read_trace_states<SpectralField>(
    const std::filesystem::path& file, double period, const Schedule& schedule) {
  const std::vector<StateRow> rows = read_state_rows(file, true);
  const StateGrid g = grid_extent(rows);
  if (g.max_b != schedule.n_windows)
    throw std::runtime_error("trace in " + file.string() +
                             " does not match the configured schedule");
  IterationTrace<SpectralField> trace;
  trace.schedule = schedule;
  trace.states.assign(g.max_a + 1,
                      std::vector<SpectralField>(g.max_b + 1,
                                                 SpectralField(period, g.max_mode)));
  trace.diag.assign(g.max_a + 1, std::vector<WindowDiag>(g.max_b + 1));
  for (const StateRow& row : rows)
    trace.states[row.a][row.b].set_mode(row.mode, row.value);
  return trace;
}

template <>
IterationTrace<WaveState> read_trace_states<WaveState>(
    const std::filesystem::path& file, double period, const Schedule& schedule) {
  const std::vector<StateRow> rows = read_state_rows(file, true);
  const StateGrid g = grid_extent(rows);
  if (g.max_b != schedule.n_windows)
    throw std::runtime_error("trace in " + file.string() +
                             " does not match the configured schedule");
  const SpectralField zero(period, g.max_mode);
  IterationTrace<WaveState> trace;
  trace.schedule = schedule;
  trace.states.assign(g.max_a + 1,
                      std::vector<WaveState>(g.max_b + 1, WaveState(zero, zero)));
  trace.diag.assign(g.max_a + 1, std::vector<WindowDiag>(g.max_b + 1));
  for (const StateRow& row : rows) {
    SpectralField& target = row.component == 0 ? trace.states[row.a][row.b].u
                                               : trace.states[row.a][row.b].v;
    target.set_mode(row.mode, row.value);
  }
  return trace;
}

template <>
std::vector<SpectralField> read_snapshots<SpectralField>(
    const std::filesystem::path& file, double period) {
  const std::vector<StateRow> rows = read_state_rows(file, false);
  const StateGrid g = grid_extent(rows);
  std::vector<SpectralField> snapshots(g.max_a + 1, SpectralField(period, g.max_mode));
  for (const StateRow& row : rows) snapshots[row.a].set_mode(row.mode, row.value);
  return snapshots;
}

template <>
std::vector<WaveState> read_snapshots<WaveState>(const std::filesystem::path& file,
                                                 double period) {
  const std::vector<StateRow> rows = read_state_rows(file, false);
  const StateGrid g = grid_extent(rows);
  const SpectralField zero(period, g.max_mode);
  std::vector<WaveState> snapshots(g.max_a + 1, WaveState(zero, zero));
  for (const StateRow& row : rows) {
    SpectralField& target =
        row.component == 0 ? snapshots[row.a].u : snapshots[row.a].v;
    target.set_mode(row.mode, row.value);
  }
  return snapshots;
}

template ErrorReport relative_error<SpectralField>(
    const IterationTrace<SpectralField>&, const std::vector<SpectralField>&);
template ErrorReport relative_error<WaveState>(const IterationTrace<WaveState>&,
                                               const std::vector<WaveState>&);
template void emit_csv<SpectralField>(const IterationTrace<SpectralField>&,
                                      const ErrorReport&, const EnergyReport*,
                                      const nlohmann::json&,
                                      const std::filesystem::path&);
template void emit_csv<WaveState>(const IterationTrace<WaveState>&,
                                  const ErrorReport&, const EnergyReport*,
                                  const nlohmann::json&,
                                  const std::filesystem::path&);

}  // namespace paraspec
