#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "gopt/localopt.hpp"

namespace gopt::detail {

// Raised when the evaluation budget runs out mid-iteration.
struct BudgetExhausted {};

// Objective wrapper shared by the routines: clamps to the box, counts every
// evaluation against the budget, and remembers the best point seen.
class CountedObjective {
 public:
  CountedObjective(const TestFunction& fn, const BoxDomain& box, std::uint64_t max_evals)
      : fn_(fn), box_(box), max_evals_(max_evals), best_x_(box.dim()) {}

  double operator()(std::span<const double> x);
  // Value and gradient; an analytic gradient is charged as one evaluation,
  // a finite-difference one as 2n more.
  double value_and_gradient(std::span<const double> x, std::span<double> grad);

  const BoxDomain& box() const { return box_; }
  std::size_t dim() const { return box_.dim(); }
  std::uint64_t evaluations() const { return count_; }
  std::uint64_t remaining() const { return max_evals_ - count_; }
  const std::vector<double>& best_point() const { return best_x_; }
  double best_value() const { return best_f_; }
  std::vector<double>& trace() { return trace_; }

 private:
  void charge(std::uint64_t k);
  void record(std::span<const double> x, double f);

  const TestFunction& fn_;
  const BoxDomain& box_;
  std::uint64_t max_evals_;
  std::uint64_t count_ = 0;
  std::vector<double> best_x_;
  double best_f_ = std::numeric_limits<double>::infinity();
  std::vector<double> trace_;
  std::vector<double> scratch_;
};

// Each routine returns true when it stopped on its tolerance test.
bool run_nelder_mead(CountedObjective& f, std::span<const double> start, double tol);
bool run_lbfgs(CountedObjective& f, std::span<const double> start, double tol);
bool run_qmodel(CountedObjective& f, std::span<const double> start, double tol);

}  // namespace gopt::detail
