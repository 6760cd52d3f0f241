#include "gopt/algorithms.hpp"

#include <algorithm>
#include <cmath>

#include "gopt/errors.hpp"
#include "gopt/qsearch.hpp"

namespace gopt {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "dh") return Algorithm::dh;
  if (name == "bbw") return Algorithm::bbw;
  if (name == "hybrid") return Algorithm::hybrid;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected dh|bbw|hybrid)");
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::dh:
      return "dh";
    case Algorithm::bbw:
      return "bbw";
    case Algorithm::hybrid:
      return "hybrid";
  }
  return "?";
}

RunMode parse_mode(std::string_view name) {
  if (name == "terminated") return RunMode::terminated;
  if (name == "run-to-optimum") return RunMode::run_to_optimum;
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected terminated|run-to-optimum)");
}

std::string_view mode_name(RunMode m) {
  return m == RunMode::terminated ? "terminated" : "run-to-optimum";
}

bool termination_met(const EffortLedger& ledger, std::uint64_t N, std::size_t n,
                     double log_base) {
  const double root = std::sqrt(static_cast<double>(N));
  const double log_n = std::log(static_cast<double>(N)) / std::log(log_base);
  const double weight = root / std::pow(log_n, static_cast<double>(n));
  return static_cast<double>(ledger.n1()) + weight * static_cast<double>(ledger.n2()) >
         2.46 * root;
}

std::uint64_t dh_rotation_budget(std::uint64_t N) {
  const double lg = std::log2(static_cast<double>(N));
  return static_cast<std::uint64_t>(22.5 * std::sqrt(static_cast<double>(N)) + 1.4 * lg * lg);
}

std::uint64_t bbw_rotation_budget(std::uint64_t N) {
  return static_cast<std::uint64_t>(2.46 * std::sqrt(static_cast<double>(N)));
}

namespace {

// Incumbent bookkeeping shared by every algorithm.
class Incumbent {
 public:
  Incumbent(Algorithm algorithm, const EffortLedger& ledger, double target)
      : ledger_(ledger), target_(target) {
    record_.algorithm = algorithm;
  }

  void offer(std::uint64_t index, double value) {
    if (has_value_ && value >= record_.found_value) return;
    has_value_ = true;
    record_.found_index = index;
    record_.found_value = value;
    const std::uint64_t effort = ledger_.effort();
    if (!record_.trace.empty() && record_.trace.back().effort == effort) {
      record_.trace.back().best_value = value;
    } else {
      record_.trace.push_back({effort, value});
    }
    if (!record_.success_effort && reached()) record_.success_effort = effort;
  }

  double value() const { return record_.found_value; }
  bool reached() const { return has_value_ && record_.found_value <= target_ + kSuccessTolerance; }

  RunRecord finish() {
    record_.success = has_value_ && std::abs(record_.found_value - target_) <= kSuccessTolerance;
    record_.ledger = ledger_;
    return std::move(record_);
  }

 private:
  const EffortLedger& ledger_;
  double target_;
  bool has_value_ = false;
  RunRecord record_;
};

bool should_stop_run_to_optimum(const Incumbent& inc, const EffortLedger& ledger,
                                const RunOptions& options) {
  return inc.reached() || ledger.n1() > options.max_rotations;
}

}  // namespace

RunRecord gas_minimize(const DiscretizedObjective& d, Schedule schedule, Rng& rng,
                       EffortLedger& ledger, const RunOptions& options) {
  const std::uint64_t N = d.size();
  const double target = options.target_value.value_or(d.min_value());
  const double lambda = schedule == Schedule::dh ? kDhLambda : kBbwLambda;
  const std::uint64_t budget = options.rotation_budget.value_or(
      schedule == Schedule::dh ? dh_rotation_budget(N) : bbw_rotation_budget(N));
  const double cap = std::sqrt(static_cast<double>(N));

  Incumbent inc(schedule == Schedule::dh ? Algorithm::dh : Algorithm::bbw, ledger, target);
  const std::uint64_t x0 = rng.uniform_index(N);
  inc.offer(x0, d.value_at(x0, ledger));
  if (N == 1) return inc.finish();

  double m = 1.0;
  for (;;) {
    if (options.mode == RunMode::terminated) {
      if (ledger.n1() > budget) break;
    } else if (should_stop_run_to_optimum(inc, ledger, options)) {
      break;
    }
    const double y = inc.value();
    const std::uint64_t r = draw_rotations(m, rng);
    const std::uint64_t x = measure(d, y, r, rng, ledger);
    const double v = d.value(x);  // checked as part of the measurement
    if (v < y) {
      inc.offer(x, v);
      if (schedule == Schedule::dh) m = 1.0;
    } else {
      m = std::min(lambda * m, cap);
    }
  }
  return inc.finish();
}

RunRecord dh_minimize(const DiscretizedObjective& d, Rng& rng, EffortLedger& ledger,
                      const RunOptions& options) {
  return gas_minimize(d, Schedule::dh, rng, ledger, options);
}

RunRecord hybrid_minimize(const DiscretizedObjective& d, const TestFunction& fn,
                          const LocalOptimizerConfig& cfg, Rng& rng, EffortLedger& ledger,
                          const RunOptions& options, const HybridOptions& hybrid) {
  const GridSpec& grid = d.grid();
  const std::uint64_t N = d.size();
  const std::size_t n = grid.dim();
  const double target = options.target_value.value_or(d.min_value());
  const double cap = std::sqrt(static_cast<double>(N));
  cfg.validate(n);

  Incumbent inc(Algorithm::hybrid, ledger, target);
  const bool polish = hybrid.grid_polish.value_or(n >= 2);

  // Local search from a grid point whose value is already known to the
  // caller; the result is snapped back onto the grid.
  auto descend = [&](std::uint64_t from, double from_value) {
    const auto start = grid.index_to_point(from);
    const LocalResult local = minimize_local(fn, grid.domain(), start, cfg, ledger);
    std::uint64_t idx = grid.point_to_index(local.point);
    if (polish) {
      idx = descend_on_grid(d, idx, ledger);
    } else if (idx != from) {
      d.value_at(idx, ledger);
    }
    const double v = d.value(idx);
    if (v < from_value) {
      inc.offer(idx, v);
    } else {
      inc.offer(from, from_value);
    }
  };

  const std::uint64_t first = rng.uniform_index(N);
  // The optimizer's first evaluation is exactly this grid point.
  descend(first, d.value(first));
  if (N == 1) return inc.finish();

  double m = 1.0;
  for (;;) {
    if (options.mode == RunMode::terminated) {
      if (termination_met(ledger, N, n, options.log_base)) break;
    } else if (should_stop_run_to_optimum(inc, ledger, options)) {
      break;
    }
    const double y = inc.value();
    const std::uint64_t r = draw_rotations(m, rng);
    const std::uint64_t x = measure(d, y, r, rng, ledger);
    const double v = d.value(x);  // checked as part of the measurement
    if (v < y) {
      descend(x, v);
    } else {
      m = std::min(kBbwLambda * m, cap);
    }
  }
  return inc.finish();
}

}  // namespace gopt
