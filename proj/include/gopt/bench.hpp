#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gopt/algorithms.hpp"
#include "gopt/localopt.hpp"
#include "gopt/oracle.hpp"

namespace gopt {

struct ExperimentConfig {
  std::string function = "griewank";
  std::size_t n = 1;
  std::uint64_t points = 2048;
  Algorithm algorithm = Algorithm::hybrid;
  Routine routine = Routine::qmodel;  // hybrid only
  std::uint64_t repetitions = 1000;
  std::uint64_t seed = 42;
  RunMode mode = RunMode::terminated;
  std::string output;
  // Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  // Throws ConfigError naming the offending field.
  void validate() const;
  GridSpec grid() const;
};

// Tabulates the configured function (through the cache directory when given).
DiscretizedObjective prepare_oracle(const ExperimentConfig& cfg,
                                    const std::optional<std::filesystem::path>& cache_dir = {});

// One seeded run; repetition r uses stream (cfg.seed, r).
RunRecord run_single(const ExperimentConfig& cfg, const DiscretizedObjective& d,
                     std::uint64_t repetition);

// cfg.repetitions independent runs, returned in repetition order. The
// result does not depend on the thread count.
std::vector<RunRecord> run_batch(const ExperimentConfig& cfg, const DiscretizedObjective& d);
std::vector<RunRecord> run_batch(const ExperimentConfig& cfg,
                                 const std::optional<std::filesystem::path>& cache_dir = {});

struct PerformanceCurve {
  std::vector<std::uint64_t> effort;
  std::vector<double> success_prob;
  std::uint64_t samples = 0;
};

// Fraction of runs that held the reference minimum at cumulative effort <= e.
PerformanceCurve performance_curve(std::span<const RunRecord> records,
                                   std::span<const std::uint64_t> effort_grid);
// `points` log-spaced integer efforts from 1 to the largest observed effort.
std::vector<std::uint64_t> default_effort_grid(std::span<const RunRecord> records,
                                               std::size_t points = 64);
// Smallest effort at which at least a fraction p of runs had succeeded;
// nullopt if that fraction is never reached.
std::optional<std::uint64_t> effort_for_success(std::span<const RunRecord> records, double p);

struct Summary {
  double mean_evals = 0.0;
  double stddev_evals = 0.0;  // population standard deviation
  double success_rate = 0.0;
  std::uint64_t reps = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

// Statistics of total effort per run (rotations, classical evaluations and
// measured-point checks).
Summary summarize(std::span<const RunRecord> records);

struct TableRow {
  std::string function;
  std::size_t n = 0;
  std::uint64_t points = 0;
  std::string algorithm;
  std::string routine;  // "-" for the pure quantum methods
  Summary summary;
  std::uint64_t seed = 0;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

TableRow make_table_row(const ExperimentConfig& cfg, std::span<const RunRecord> records);

void write_curve_csv(std::ostream& out, const PerformanceCurve& curve);
PerformanceCurve read_curve_csv(std::istream& in);

void write_table_csv(std::ostream& out, std::span<const TableRow> rows);
std::vector<TableRow> read_table_csv(std::istream& in);

// Per-run records: rep,found_index,found_value,success,n1,n2,measurements,success_effort
void write_runs_csv(std::ostream& out, std::span<const RunRecord> records);

}  // namespace gopt
