#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gopt/grid.hpp"
#include "gopt/oracle.hpp"
#include "gopt/testbed.hpp"

namespace gopt {

enum class Routine {
  nmead,   // Nelder-Mead simplex
  lbfgs,   // limited-memory BFGS with projected Armijo backtracking
  qmodel,  // derivative-free diagonal quadratic model with a trust radius
};

Routine parse_routine(std::string_view name);
std::string_view routine_name(Routine r);

struct LocalOptimizerConfig {
  Routine routine = Routine::qmodel;
  // Stop once steps (or the simplex / trust radius) fall below this on every axis.
  double tolerance = 1e-6;
  std::uint64_t max_evals = 5000;

  // Defaults tied to a grid: tolerance = smallest cell width,
  // max_evals = 40 * ceil(log2 P)^n capped at 5000.
  static LocalOptimizerConfig for_grid(Routine routine, const GridSpec& grid);
  void validate(std::size_t n) const;
};

struct LocalResult {
  std::vector<double> point;
  double value = 0.0;
  std::uint64_t evaluations = 0;
  bool converged = false;
  // Best value seen after each charged evaluation.
  std::vector<double> best_trace;
};

// Box-constrained local minimization from `start`. Every objective
// evaluation is charged to ledger.n2; the returned point is the best one
// evaluated, so result.value <= f(start).
LocalResult minimize_local(const TestFunction& fn, const BoxDomain& domain,
                           std::span<const double> start, const LocalOptimizerConfig& cfg,
                           EffortLedger& ledger);

// Discrete steepest descent over the 2n axis neighbours of a grid index,
// reading values through the charged oracle. Stops at a grid local minimum.
std::uint64_t descend_on_grid(const DiscretizedObjective& d, std::uint64_t start,
                              EffortLedger& ledger);

}  // namespace gopt
