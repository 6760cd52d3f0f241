#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gopt/localopt.hpp"
#include "gopt/oracle.hpp"
#include "gopt/rng.hpp"
#include "gopt/testbed.hpp"

namespace gopt {

enum class Algorithm { dh, bbw, hybrid };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a);

enum class RunMode {
  terminated,      // each algorithm's own stopping rule
  run_to_optimum,  // ignore stopping rules, run until the grid minimum value is held
};

RunMode parse_mode(std::string_view name);
std::string_view mode_name(RunMode m);

// Values within this distance of the reference minimum count as success.
inline constexpr double kSuccessTolerance = 1e-12;

struct TracePoint {
  std::uint64_t effort;
  double best_value;
};

struct RunRecord {
  Algorithm algorithm = Algorithm::hybrid;
  std::uint64_t found_index = 0;
  double found_value = 0.0;
  bool success = false;
  EffortLedger ledger;
  // One entry per improvement of the incumbent; effort strictly increasing.
  std::vector<TracePoint> trace;
  // Effort at which the reference minimum value was first held.
  std::optional<std::uint64_t> success_effort;
};

struct RunOptions {
  RunMode mode = RunMode::terminated;
  // Reference minimum value; defaults to the smallest tabulated value.
  std::optional<double> target_value;
  // Replaces the default rotation budget of dh / bbw in terminated mode.
  std::optional<std::uint64_t> rotation_budget;
  // Hard stop for run-to-optimum mode.
  std::uint64_t max_rotations = std::uint64_t{1} << 40;
  // Base of the logarithm in the hybrid stopping rule.
  double log_base = 2.0;
};

// n1 + (sqrt(N) / log(N)^n) * n2 > 2.46 sqrt(N)
bool termination_met(const EffortLedger& ledger, std::uint64_t N, std::size_t n,
                     double log_base = 2.0);

// 22.5 sqrt(N) + 1.4 log2(N)^2 rotations.
std::uint64_t dh_rotation_budget(std::uint64_t N);
// 2.46 sqrt(N) rotations.
std::uint64_t bbw_rotation_budget(std::uint64_t N);

inline constexpr double kDhLambda = 8.0 / 7.0;
inline constexpr double kBbwLambda = 1.34;

enum class Schedule {
  dh,   // lambda = 8/7, m reset to 1 on every improvement
  bbw,  // lambda = 1.34, m set to 1 once at the start
};

// Grover adaptive search over the tabulated objective.
RunRecord gas_minimize(const DiscretizedObjective& d, Schedule schedule, Rng& rng,
                       EffortLedger& ledger, const RunOptions& options = {});

RunRecord dh_minimize(const DiscretizedObjective& d, Rng& rng, EffortLedger& ledger,
                      const RunOptions& options = {});

struct HybridOptions {
  // Finish each local search with a discrete descent over grid neighbours.
  // Unset: polish when n >= 2.
  std::optional<bool> grid_polish;
};

// Local descent to a minimum, then Grover search below the incumbent to
// escape it, alternating until the weighted query count exceeds 2.46 sqrt(N).
RunRecord hybrid_minimize(const DiscretizedObjective& d, const TestFunction& fn,
                          const LocalOptimizerConfig& cfg, Rng& rng, EffortLedger& ledger,
                          const RunOptions& options = {}, const HybridOptions& hybrid = {});

}  // namespace gopt
