#include "gopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "gopt/errors.hpp"

namespace gopt {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void expect_header(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error("unexpected CSV header, wanted '" + header + "'");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  const TestFunction& fn = find_function(function);
  if (!fn.supports(n)) {
    std::ostringstream msg;
    msg << "n: " << function << " does not support " << n << " variable(s)";
    throw ConfigError(msg.str());
  }
  if (points < 2) throw ConfigError("points: must be at least 2");
  if (repetitions < 1) throw ConfigError("reps: must be at least 1");
  double total = 1.0;
  for (std::size_t k = 0; k < n; ++k) total *= static_cast<double>(points);
  if (total > static_cast<double>(kMaxOraclePoints)) {
    std::ostringstream msg;
    msg << "points: " << points << "^" << n << " exceeds the oracle limit of "
        << kMaxOraclePoints << " grid points";
    throw ConfigError(msg.str());
  }
}

GridSpec ExperimentConfig::grid() const {
  return GridSpec(find_function(function).domain(n), points);
}

DiscretizedObjective prepare_oracle(const ExperimentConfig& cfg,
                                    const std::optional<std::filesystem::path>& cache_dir) {
  cfg.validate();
  return build_cached(find_function(cfg.function), cfg.grid(), cache_dir);
}

RunRecord run_single(const ExperimentConfig& cfg, const DiscretizedObjective& d,
                     std::uint64_t repetition) {
  Rng rng = Rng::for_stream(cfg.seed, repetition);
  EffortLedger ledger;
  RunOptions options;
  options.mode = cfg.mode;
  switch (cfg.algorithm) {
    case Algorithm::dh:
      return gas_minimize(d, Schedule::dh, rng, ledger, options);
    case Algorithm::bbw:
      return gas_minimize(d, Schedule::bbw, rng, ledger, options);
    case Algorithm::hybrid: {
      const auto local = LocalOptimizerConfig::for_grid(cfg.routine, d.grid());
      return hybrid_minimize(d, find_function(cfg.function), local, rng, ledger, options);
    }
  }
  throw ConfigError("alg: unsupported algorithm");
}

std::vector<RunRecord> run_batch(const ExperimentConfig& cfg, const DiscretizedObjective& d) {
  cfg.validate();
  std::vector<RunRecord> records(cfg.repetitions);
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(
                                                 std::min<std::uint64_t>(cfg.repetitions, 256)));

  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t r = next++; r < cfg.repetitions; r = next++) {
      records[r] = run_single(cfg, d, r);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return records;
}

std::vector<RunRecord> run_batch(const ExperimentConfig& cfg,
                                 const std::optional<std::filesystem::path>& cache_dir) {
  const auto d = prepare_oracle(cfg, cache_dir);
  return run_batch(cfg, d);
}

PerformanceCurve performance_curve(std::span<const RunRecord> records,
                                   std::span<const std::uint64_t> effort_grid) {
  if (records.empty()) throw ConfigError("performance curve needs at least one run");
  std::vector<std::uint64_t> passage;
  for (const auto& r : records) {
    if (r.success_effort) passage.push_back(*r.success_effort);
  }
  std::sort(passage.begin(), passage.end());

  PerformanceCurve curve;
  curve.samples = records.size();
  curve.effort.assign(effort_grid.begin(), effort_grid.end());
  std::sort(curve.effort.begin(), curve.effort.end());
  for (std::uint64_t e : curve.effort) {
    const auto reached = std::upper_bound(passage.begin(), passage.end(), e) - passage.begin();
    curve.success_prob.push_back(static_cast<double>(reached) /
                                 static_cast<double>(records.size()));
  }
  return curve;
}

std::vector<std::uint64_t> default_effort_grid(std::span<const RunRecord> records,
                                               std::size_t points) {
  std::uint64_t max_effort = 1;
  for (const auto& r : records) max_effort = std::max(max_effort, r.ledger.effort());
  std::vector<std::uint64_t> grid;
  if (points < 2) return {max_effort};
  const double top = std::log(static_cast<double>(max_effort));
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    const auto e = static_cast<std::uint64_t>(std::llround(std::exp(t * top)));
    if (grid.empty() || e > grid.back()) grid.push_back(e);
  }
  grid.back() = max_effort;
  return grid;
}

std::optional<std::uint64_t> effort_for_success(std::span<const RunRecord> records, double p) {
  if (records.empty()) return std::nullopt;
  std::vector<std::uint64_t> passage;
  for (const auto& r : records) {
    if (r.success_effort) passage.push_back(*r.success_effort);
  }
  std::sort(passage.begin(), passage.end());
  const auto needed =
      static_cast<std::size_t>(std::ceil(p * static_cast<double>(records.size()) - 1e-9));
  if (needed == 0) return 0;
  if (needed > passage.size()) return std::nullopt;
  return passage[needed - 1];
}

Summary summarize(std::span<const RunRecord> records) {
  if (records.empty()) throw ConfigError("summary needs at least one run");
  Summary s;
  s.reps = records.size();
  double sum = 0.0;
  std::uint64_t successes = 0;
  for (const auto& r : records) {
    sum += static_cast<double>(r.ledger.effort());
    successes += r.success ? 1 : 0;
  }
  const double count = static_cast<double>(records.size());
  s.mean_evals = sum / count;
  double sq = 0.0;
  for (const auto& r : records) {
    const double dev = static_cast<double>(r.ledger.effort()) - s.mean_evals;
    sq += dev * dev;
  }
  s.stddev_evals = std::sqrt(sq / count);
  s.success_rate = static_cast<double>(successes) / count;
  return s;
}

TableRow make_table_row(const ExperimentConfig& cfg, std::span<const RunRecord> records) {
  TableRow row;
  row.function = cfg.function;
  row.n = cfg.n;
  row.points = cfg.points;
  row.algorithm = std::string(algorithm_name(cfg.algorithm));
  row.routine =
      cfg.algorithm == Algorithm::hybrid ? std::string(routine_name(cfg.routine)) : "-";
  row.summary = summarize(records);
  row.seed = cfg.seed;
  return row;
}

void write_curve_csv(std::ostream& out, const PerformanceCurve& curve) {
  out << "effort,success_prob,samples\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < curve.effort.size(); ++i) {
    out << curve.effort[i] << ',' << curve.success_prob[i] << ',' << curve.samples << '\n';
  }
}

PerformanceCurve read_curve_csv(std::istream& in) {
  expect_header(in, "effort,success_prob,samples");
  PerformanceCurve curve;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3) throw Error("malformed curve row: " + line);
    curve.effort.push_back(std::stoull(f[0]));
    curve.success_prob.push_back(std::stod(f[1]));
    curve.samples = std::stoull(f[2]);
  }
  return curve;
}

void write_table_csv(std::ostream& out, std::span<const TableRow> rows) {
  out << "function,n,P,algorithm,routine,mean_evals,stddev_evals,success_rate,reps,seed\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : rows) {
    out << r.function << ',' << r.n << ',' << r.points << ',' << r.algorithm << ',' << r.routine
        << ',' << r.summary.mean_evals << ',' << r.summary.stddev_evals << ','
        << r.summary.success_rate << ',' << r.summary.reps << ',' << r.seed << '\n';
  }
}

std::vector<TableRow> read_table_csv(std::istream& in) {
  expect_header(in,
                "function,n,P,algorithm,routine,mean_evals,stddev_evals,success_rate,reps,seed");
  std::vector<TableRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 10) throw Error("malformed table row: " + line);
    TableRow r;
    r.function = f[0];
    r.n = std::stoull(f[1]);
    r.points = std::stoull(f[2]);
    r.algorithm = f[3];
    r.routine = f[4];
    r.summary.mean_evals = std::stod(f[5]);
    r.summary.stddev_evals = std::stod(f[6]);
    r.summary.success_rate = std::stod(f[7]);
    r.summary.reps = std::stoull(f[8]);
    r.seed = std::stoull(f[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_runs_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << "rep,found_index,found_value,success,n1,n2,measurements,success_effort\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out << i << ',' << r.found_index << ',' << r.found_value << ',' << (r.success ? 1 : 0) << ','
        << r.ledger.n1() << ',' << r.ledger.n2() << ',' << r.ledger.measurements() << ',';
    if (r.success_effort) out << *r.success_effort;
    out << '\n';
  }
}

}  // namespace gopt
