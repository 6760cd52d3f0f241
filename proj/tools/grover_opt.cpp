#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gopt/bench.hpp"
#include "gopt/errors.hpp"
#include "gopt/testbed.hpp"

namespace {

using namespace gopt;

constexpr int kConfigExit = 2;

struct Options {
  std::vector<std::string> functions;
  std::size_t n = 1;
  std::optional<std::uint64_t> points;
  std::vector<std::string> algorithms;
  std::vector<std::string> routines;
  std::uint64_t reps = 1000;
  std::uint64_t seed = 42;
  std::optional<std::string> mode;
  std::string out;
  unsigned threads = 0;
};

std::optional<std::filesystem::path> cache_dir() {
  const char* dir = std::getenv("GROVER_OPT_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

// Default grids for the evaluation tables.
std::uint64_t default_points(std::size_t n) {
  switch (n) {
    case 1:
    case 2:
      return 2048;
    case 3:
      return 256;
    default:
      throw ConfigError("points: no default grid for n > 3, pass --points");
  }
}

ExperimentConfig single_config(const Options& o, RunMode default_mode) {
  if (o.functions.size() != 1) throw ConfigError("fn: exactly one function is required");
  if (o.algorithms.size() > 1) throw ConfigError("alg: exactly one algorithm is allowed");
  if (o.routines.size() > 1) throw ConfigError("routine: exactly one routine is allowed");
  ExperimentConfig cfg;
  cfg.function = o.functions.front();
  cfg.n = o.n;
  cfg.points = o.points.value_or(default_points(o.n));
  cfg.algorithm = o.algorithms.empty() ? Algorithm::hybrid : parse_algorithm(o.algorithms.front());
  cfg.routine = o.routines.empty() ? Routine::qmodel : parse_routine(o.routines.front());
  cfg.repetitions = o.reps;
  cfg.seed = o.seed;
  cfg.mode = o.mode ? parse_mode(*o.mode) : default_mode;
  cfg.output = o.out;
  cfg.threads = o.threads;
  cfg.validate();
  return cfg;
}

template <typename Write>
void emit(const std::string& path, Write write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw Error("failed writing '" + path + "'");
}

void report(const ExperimentConfig& cfg, const Summary& s) {
  std::cerr << cfg.function << " n=" << cfg.n << " P=" << cfg.points << " "
            << algorithm_name(cfg.algorithm) << ": mean=" << s.mean_evals
            << " sd=" << s.stddev_evals << " success=" << s.success_rate << " reps=" << s.reps
            << "\n";
}

void cmd_run(const Options& o) {
  const auto cfg = single_config(o, RunMode::terminated);
  const auto records = run_batch(cfg, cache_dir());
  emit(cfg.output, [&](std::ostream& out) { write_runs_csv(out, records); });
  report(cfg, summarize(records));
}

void cmd_curve(const Options& o) {
  const auto cfg = single_config(o, RunMode::run_to_optimum);
  const auto records = run_batch(cfg, cache_dir());
  const auto grid = default_effort_grid(records);
  const auto curve = performance_curve(records, grid);
  emit(cfg.output, [&](std::ostream& out) { write_curve_csv(out, curve); });
  report(cfg, summarize(records));
}

void cmd_table(const Options& o) {
  std::vector<std::string> functions = o.functions;
  if (functions.empty()) {
    for (const auto& fn : all_functions()) functions.push_back(fn.name());
  }
  std::vector<Algorithm> algorithms;
  for (const auto& a : o.algorithms) algorithms.push_back(parse_algorithm(a));
  if (algorithms.empty()) algorithms = {Algorithm::hybrid, Algorithm::bbw, Algorithm::dh};
  std::vector<Routine> routines;
  for (const auto& r : o.routines) routines.push_back(parse_routine(r));
  if (routines.empty()) routines = {Routine::qmodel};

  std::vector<TableRow> rows;
  for (const auto& name : functions) {
    const TestFunction& fn = find_function(name);
    if (!fn.supports(o.n) || fn.degenerate(o.n)) {
      std::cerr << "skipping " << name << " at n=" << o.n << "\n";
      continue;
    }
    ExperimentConfig cfg;
    cfg.function = name;
    cfg.n = o.n;
    cfg.points = o.points.value_or(default_points(o.n));
    cfg.repetitions = o.reps;
    cfg.seed = o.seed;
    cfg.mode = o.mode ? parse_mode(*o.mode) : RunMode::run_to_optimum;
    cfg.threads = o.threads;
    cfg.validate();
    const auto d = prepare_oracle(cfg, cache_dir());
    for (Algorithm a : algorithms) {
      cfg.algorithm = a;
      const std::vector<Routine> variants =
          a == Algorithm::hybrid ? routines : std::vector<Routine>{Routine::qmodel};
      for (Routine r : variants) {
        cfg.routine = r;
        const auto records = run_batch(cfg, d);
        rows.push_back(make_table_row(cfg, records));
        report(cfg, rows.back().summary);
      }
    }
  }
  emit(o.out, [&](std::ostream& out) { write_table_csv(out, rows); });
}

void add_common(CLI::App* cmd, Options& o, bool multi) {
  if (multi) {
    cmd->add_option("--fn", o.functions, "Test functions (default: all)");
    cmd->add_option("--alg", o.algorithms, "Algorithms: dh, bbw, hybrid (default: all)");
    cmd->add_option("--routine", o.routines, "Local routines: nmead, lbfgs, qmodel")
        ->default_str("qmodel");
  } else {
    cmd->add_option("--fn", o.functions, "Test function")->required()->expected(1);
    cmd->add_option("--alg", o.algorithms, "Algorithm: dh, bbw, hybrid")
        ->expected(1)
        ->default_str("hybrid");
    cmd->add_option("--routine", o.routines, "Local routine: nmead, lbfgs, qmodel")
        ->expected(1)
        ->default_str("qmodel");
  }
  cmd->add_option("--n", o.n, "Number of variables")->capture_default_str();
  cmd->add_option("--points", o.points, "Grid points per axis (default: 2048, or 256 for n=3)");
  cmd->add_option("--reps", o.reps, "Repetitions")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--mode", o.mode, "terminated or run-to-optimum");
  cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");
  cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid quantum/classical global optimization on discretized test functions"};
  app.require_subcommand(1);

  Options run_opts, curve_opts, table_opts;
  auto* run = app.add_subcommand("run", "Per-run records as CSV");
  add_common(run, run_opts, false);
  auto* curve = app.add_subcommand("curve", "Performance curve (success vs effort) as CSV");
  add_common(curve, curve_opts, false);
  auto* table = app.add_subcommand("table", "Evaluation/success table over the function registry");
  add_common(table, table_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    if (*run) cmd_run(run_opts);
    if (*curve) cmd_curve(curve_opts);
    if (*table) cmd_table(table_opts);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
