#include "paraspec/config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace paraspec {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& message) { throw ConfigError("config: " + message); }

const json& require_key(const json& node, const std::string& key,
                        const std::string& path) {
  const auto it = node.find(key);
  if (it == node.end()) fail("missing key " + path);
  return *it;
}

double require_number(const json& node, const std::string& key,
                      const std::string& path) {
  const json& value = require_key(node, key, path);
  if (!value.is_number()) fail(path + " must be a number");
  return value.get<double>();
}

int require_int(const json& node, const std::string& key, const std::string& path) {
  const json& value = require_key(node, key, path);
  if (!value.is_number_integer()) fail(path + " must be an integer");
  return value.get<int>();
}

std::string require_string(const json& node, const std::string& key,
                           const std::string& path) {
  const json& value = require_key(node, key, path);
  if (!value.is_string()) fail(path + " must be a string");
  return value.get<std::string>();
}

bool divides(double small, double large) {
  const double ratio = large / small;
  const double rounded = std::round(ratio);
  return rounded >= 1.0 && std::abs(rounded * small - large) <= 1e-12 * large;
}

int resolved_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void validate(ExperimentConfig& config) {
  if (config.period <= 0.0) fail("problem.period must be positive");
  if (config.kind == ProblemKind::parabolic &&
      std::abs(config.period - kTwoPi) > 1e-12)
    fail("problem.period must be 2*pi for the parabolic problem");
  if (config.kind == ProblemKind::wave && config.c <= 0.0)
    fail("problem.c must be positive");
  if (config.kind == ProblemKind::parabolic && config.mu < 0.0)
    fail("problem.mu must be >= 0");
  if (config.kind == ProblemKind::burgers && config.nu < 0.0)
    fail("problem.nu must be >= 0");

  if (config.initial.kind == "power_law") {
    if (config.initial.p <= 0.0) fail("initial.p must be positive");
    if (config.initial.style != "parabolic" && config.initial.style != "wave")
      fail("initial.style must be one of: parabolic, wave");
  } else if (config.initial.kind == "ricker") {
    if (config.initial.f_s <= 0.0) fail("initial.f_s must be positive");
    if (config.initial.x_s < 0.0 || config.initial.x_s >= config.period)
      fail("initial.x_s must lie in [0, period)");
    if (config.kind != ProblemKind::wave && config.c <= 0.0)
      fail("initial.ricker needs problem.c for its width");
  } else {
    fail("initial.kind must be one of: power_law, ricker");
  }

  if (config.n < 1) fail("space.n must be >= 1");
  if (config.n_coarse && (*config.n_coarse < 1 || *config.n_coarse > config.n))
    fail("space.n_coarse must lie in [1, space.n]");

  if (config.fine_dt <= 0.0 || config.coarse_dt <= 0.0 || config.big_dt <= 0.0 ||
      config.t_final <= 0.0)
    fail("time values must all be positive");
  if (config.fine_dt > config.coarse_dt) fail("time.fine_dt must be <= time.coarse_dt");
  if (config.coarse_dt > config.big_dt) fail("time.coarse_dt must be <= time.big_dt");
  if (config.big_dt > config.t_final) fail("time.big_dt must be <= time.t_final");
  if (!divides(config.fine_dt, config.coarse_dt))
    fail("time.fine_dt must divide time.coarse_dt (1e-12 relative)");
  if (!divides(config.coarse_dt, config.big_dt))
    fail("time.coarse_dt must divide time.big_dt (1e-12 relative)");
  if (!divides(config.big_dt, config.t_final))
    fail("time.big_dt must divide time.t_final (1e-12 relative)");

  if (config.iterations < 0) fail("method.iterations must be >= 0");
  int previous = 0;
  for (const int b : config.partition) {
    if (b <= previous || b > config.n)
      fail("method.partition must be strictly increasing within [1, space.n]");
    previous = b;
  }
  if (config.damping.rule != "default" && config.damping.rule != "two_group" &&
      config.damping.rule != "custom")
    fail("method.damping.rule must be one of: default, two_group, custom");
  if (config.damping.rule == "custom" &&
      config.damping.factors.size() != config.partition.size() + 1)
    fail("method.damping.factors needs one factor per group");

  if (config.variant != Variant::plain && config.kind == ProblemKind::parabolic)
    fail("method.variant: projected variants are defined for wave and burgers");
  if (config.variant == Variant::projected_damped && config.kind != ProblemKind::burgers)
    fail("method.variant: projected_damped is defined for burgers");

  if (config.workers < 1) fail("workers must be >= 1");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }

  ExperimentConfig config;

  const json& problem = require_key(document, "problem", "problem");
  const std::string kind = require_string(problem, "kind", "problem.kind");
  if (kind == "wave") {
    config.kind = ProblemKind::wave;
    config.c = require_number(problem, "c", "problem.c");
  } else if (kind == "parabolic") {
    config.kind = ProblemKind::parabolic;
    config.mu = require_number(problem, "mu", "problem.mu");
  } else if (kind == "burgers") {
    config.kind = ProblemKind::burgers;
    config.nu = require_number(problem, "nu", "problem.nu");
  } else {
    fail("problem.kind must be one of: wave, parabolic, burgers");
  }
  config.period = problem.contains("period")
                      ? require_number(problem, "period", "problem.period")
                      : (config.kind == ProblemKind::wave
                             ? 0.0  // required below via validation
                             : kTwoPi);
  if (config.kind == ProblemKind::wave && !problem.contains("period"))
    fail("missing key problem.period");
  if (problem.contains("scheme")) {
    const std::string scheme = require_string(problem, "scheme", "problem.scheme");
    if (scheme == "implicit_euler")
      config.scheme = ParabolicScheme::implicit_euler;
    else if (scheme == "crank_nicolson")
      config.scheme = ParabolicScheme::crank_nicolson;
    else
      fail("problem.scheme must be one of: implicit_euler, crank_nicolson");
  }
  if (config.kind != ProblemKind::wave && problem.contains("c"))
    config.c = require_number(problem, "c", "problem.c");

  const json& initial = require_key(document, "initial", "initial");
  config.initial.kind = require_string(initial, "kind", "initial.kind");
  if (config.initial.kind == "power_law") {
    config.initial.p = require_number(initial, "p", "initial.p");
    config.initial.style = require_string(initial, "style", "initial.style");
  } else if (config.initial.kind == "ricker") {
    config.initial.f_s = require_number(initial, "f_s", "initial.f_s");
    config.initial.x_s = require_number(initial, "x_s", "initial.x_s");
  }

  const json& space = require_key(document, "space", "space");
  config.n = require_int(space, "n", "space.n");
  if (space.contains("n_coarse"))
    config.n_coarse = require_int(space, "n_coarse", "space.n_coarse");

  const json& time = require_key(document, "time", "time");
  config.t_final = require_number(time, "t_final", "time.t_final");
  config.big_dt = require_number(time, "big_dt", "time.big_dt");
  config.coarse_dt = require_number(time, "coarse_dt", "time.coarse_dt");
  config.fine_dt = require_number(time, "fine_dt", "time.fine_dt");

  if (document.contains("method")) {
    const json& method = document["method"];
    if (method.contains("variant")) {
      const std::string variant = require_string(method, "variant", "method.variant");
      if (variant == "plain")
        config.variant = Variant::plain;
      else if (variant == "projected")
        config.variant = Variant::projected;
      else if (variant == "projected_damped")
        config.variant = Variant::projected_damped;
      else
        fail("method.variant must be one of: plain, projected, projected_damped");
    }
    if (method.contains("iterations"))
      config.iterations = require_int(method, "iterations", "method.iterations");
    if (method.contains("partition")) {
      const json& partition = method["partition"];
      if (!partition.is_array()) fail("method.partition must be an array");
      for (const json& b : partition) {
        if (!b.is_number_integer()) fail("method.partition entries must be integers");
        config.partition.push_back(b.get<int>());
      }
    }
    if (method.contains("damping")) {
      const json& damping = method["damping"];
      if (damping.contains("factors")) {
        config.damping.rule = "custom";
        for (const json& f : damping["factors"]) {
          if (!f.is_number()) fail("method.damping.factors entries must be numbers");
          config.damping.factors.push_back(f.get<double>());
        }
        if (damping.contains("rule") && damping["rule"].get<std::string>() != "custom")
          fail("method.damping: rule and factors conflict");
      } else if (damping.contains("rule")) {
        config.damping.rule = require_string(damping, "rule", "method.damping.rule");
      }
    }
  }

  if (document.contains("output")) {
    const json& output = document["output"];
    if (output.contains("dir"))
      config.out_dir = require_string(output, "dir", "output.dir");
  }
  if (document.contains("workers"))
    config.workers = require_int(document, "workers", "workers");
  config.workers = resolved_workers(config.workers);

  validate(config);
  return config;
}

nlohmann::json to_json(const ExperimentConfig& config) {
  json problem;
  switch (config.kind) {
    case ProblemKind::wave:
      problem["kind"] = "wave";
      problem["c"] = config.c;
      break;
    case ProblemKind::parabolic:
      problem["kind"] = "parabolic";
      problem["mu"] = config.mu;
      problem["scheme"] = config.scheme == ParabolicScheme::crank_nicolson
                              ? "crank_nicolson"
                              : "implicit_euler";
      break;
    case ProblemKind::burgers:
      problem["kind"] = "burgers";
      problem["nu"] = config.nu;
      break;
  }
  problem["period"] = config.period;
  if (config.kind != ProblemKind::wave && config.c > 0.0) problem["c"] = config.c;

  json initial;
  initial["kind"] = config.initial.kind;
  if (config.initial.kind == "power_law") {
    initial["p"] = config.initial.p;
    initial["style"] = config.initial.style;
  } else {
    initial["f_s"] = config.initial.f_s;
    initial["x_s"] = config.initial.x_s;
  }

  json space;
  space["n"] = config.n;
  if (config.n_coarse) space["n_coarse"] = *config.n_coarse;

  json time;
  time["t_final"] = config.t_final;
  time["big_dt"] = config.big_dt;
  time["coarse_dt"] = config.coarse_dt;
  time["fine_dt"] = config.fine_dt;

  json method;
  switch (config.variant) {
    case Variant::plain: method["variant"] = "plain"; break;
    case Variant::projected: method["variant"] = "projected"; break;
    case Variant::projected_damped: method["variant"] = "projected_damped"; break;
  }
  method["iterations"] = config.iterations;
  method["partition"] = config.partition;
  if (config.damping.rule == "custom")
    method["damping"] = json{{"factors", config.damping.factors}};
  else
    method["damping"] = json{{"rule", config.damping.rule}};

  json document;
  document["problem"] = problem;
  document["initial"] = initial;
  document["space"] = space;
  document["time"] = time;
  document["method"] = method;
  document["output"] = json{{"dir", config.out_dir}};
  document["workers"] = config.workers;
  return document;
}

std::vector<std::string> preset_names() {
  return {"parabolic_regularity", "wave_power", "wave_ricker",
          "burgers_case1",        "burgers_case2", "burgers_case3"};
}

ExperimentConfig preset(const std::string& name, const std::string& scale) {
  if (scale != "paper" && scale != "desk")
    throw ConfigError("preset: scale must be one of: paper, desk");
  const bool desk = scale == "desk";

  ExperimentConfig config;
  config.workers = resolved_workers(0);

  if (name == "parabolic_regularity") {
    // Same parameters at both scales: the published setup already runs fast.
    config.kind = ProblemKind::parabolic;
    config.mu = 1e-10;
    config.period = kTwoPi;
    config.initial = {"power_law", 1.0, "parabolic", 0.0, 0.0};
    config.n = 256;
    config.t_final = 2.0;
    config.big_dt = 2e-2;
    config.coarse_dt = 1e-2;
    config.fine_dt = 1e-4;
    config.iterations = 15;
  } else if (name == "wave_power" || name == "wave_ricker") {
    config.kind = ProblemKind::wave;
    config.c = 2000.0;
    config.period = 5000.0;
    if (name == "wave_power")
      config.initial = {"power_law", 1.0, "wave", 0.0, 0.0};
    else
      config.initial = {"ricker", 0.0, "", 2.5, 2500.0};
    config.n = 30;
    config.t_final = desk ? 20.0 : 100.0;
    config.big_dt = 2e-1;
    config.coarse_dt = 4e-3;
    config.fine_dt = desk ? 1e-4 : 2e-6;
    config.iterations = 15;
    config.partition = {20};
  } else if (name == "burgers_case1") {
    // Same parameters at both scales.
    config.kind = ProblemKind::burgers;
    config.nu = 1e-2;
    config.period = kTwoPi;
    config.initial = {"power_law", 10.0, "parabolic", 0.0, 0.0};
    config.n = 256;
    config.t_final = 2.0;
    config.big_dt = 2e-2;
    config.coarse_dt = 1e-2;
    config.fine_dt = 1e-4;
    config.iterations = 3;
  } else if (name == "burgers_case2" || name == "burgers_case3") {
    config.kind = ProblemKind::burgers;
    config.nu = 1e-3;
    config.period = kTwoPi;
    config.initial = {"power_law", 10.0, "parabolic", 0.0, 0.0};
    config.n = 512;
    if (name == "burgers_case3") config.n_coarse = 256;
    config.t_final = 2.0;
    config.big_dt = 2e-2;
    config.coarse_dt = 1e-2;
    config.fine_dt = desk ? 1e-3 : 1e-5;
    config.iterations = 15;
    config.partition = {32};
    config.damping.rule = "two_group";
  } else {
    throw ConfigError("preset: unknown name " + name +
                      " (valid: parabolic_regularity, wave_power, wave_ricker, "
                      "burgers_case1, burgers_case2, burgers_case3)");
  }
  validate(config);
  return config;
}

int n_windows(const ExperimentConfig& config) {
  const auto count = static_cast<int>(std::llround(config.t_final / config.big_dt));
  return count;
}

GroupPartition make_partition(const ExperimentConfig& config) {
  std::vector<int> boundaries;
  boundaries.push_back(0);
  boundaries.insert(boundaries.end(), config.partition.begin(), config.partition.end());
  boundaries.push_back(config.n + 1);
  return GroupPartition(std::move(boundaries));
}

DampingFilter make_filter(const ExperimentConfig& config) {
  GroupPartition partition = make_partition(config);
  if (config.damping.rule == "two_group")
    return DampingFilter::two_group_rule(std::move(partition));
  if (config.damping.rule == "custom")
    return DampingFilter(std::move(partition), config.damping.factors);
  return DampingFilter::default_rule(std::move(partition));
}

PararealRun make_run(const ExperimentConfig& config) {
  Problem problem;
  switch (config.kind) {
    case ProblemKind::wave: problem = Problem::wave(config.c); break;
    case ProblemKind::parabolic:
      problem = Problem::parabolic(config.mu, config.scheme);
      break;
    case ProblemKind::burgers: problem = Problem::burgers(config.nu); break;
  }

  PararealRun run;
  run.schedule = Schedule(config.t_final, n_windows(config));
  run.coarse = {problem, config.coarse_dt, config.n_coarse.value_or(config.n)};
  run.fine = {problem, config.fine_dt, config.n};
  run.variant = config.variant;
  run.iterations = config.iterations;
  if (config.variant != Variant::plain) run.partition = make_partition(config);
  if (config.variant == Variant::projected_damped) run.filter = make_filter(config);
  run.workers = config.workers;
  return run;
}

SpectralField make_field_initial(const ExperimentConfig& config) {
  if (config.initial.kind == "power_law") {
    const PowerLawStyle style = config.initial.style == "parabolic"
                                    ? PowerLawStyle::parabolic
                                    : PowerLawStyle::wave;
    return init_power_law(config.n, config.initial.p, style, config.period);
  }
  return init_ricker(config.n, config.initial.f_s, config.initial.x_s, config.c,
                     config.period);
}

WaveState make_wave_initial(const ExperimentConfig& config) {
  SpectralField zero(config.period, config.n);
  if (config.initial.kind == "ricker") {
    // Paper setup: zero displacement, Ricker pulse as the initial velocity.
    SpectralField g = init_ricker(config.n, config.initial.f_s, config.initial.x_s,
                                  config.c, config.period);
    return WaveState(std::move(zero), std::move(g));
  }
  // Power-law displacement released from rest.
  SpectralField u = make_field_initial(config);
  return WaveState(std::move(u), std::move(zero));
}

}  // namespace paraspec
