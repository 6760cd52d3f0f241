#include "gopt/localopt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gopt/errors.hpp"
#include "localopt_detail.hpp"

namespace gopt {

Routine parse_routine(std::string_view name) {
  if (name == "nmead") return Routine::nmead;
  if (name == "lbfgs") return Routine::lbfgs;
  if (name == "qmodel") return Routine::qmodel;
  throw ConfigError("unknown routine '" + std::string(name) + "' (expected nmead|lbfgs|qmodel)");
}

std::string_view routine_name(Routine r) {
  switch (r) {
    case Routine::nmead:
      return "nmead";
    case Routine::lbfgs:
      return "lbfgs";
    case Routine::qmodel:
      return "qmodel";
  }
  return "?";
}

LocalOptimizerConfig LocalOptimizerConfig::for_grid(Routine routine, const GridSpec& grid) {
  LocalOptimizerConfig cfg;
  cfg.routine = routine;
  cfg.tolerance = grid.min_eps();
  const double bits = std::ceil(std::log2(static_cast<double>(grid.points_per_axis())));
  const double cap = 40.0 * std::pow(bits, static_cast<double>(grid.dim()));
  cfg.max_evals = static_cast<std::uint64_t>(std::min(cap, 5000.0));
  cfg.max_evals = std::max<std::uint64_t>(cfg.max_evals, grid.dim() + 2);
  return cfg;
}

void LocalOptimizerConfig::validate(std::size_t n) const {
  if (!(tolerance > 0.0)) throw ConfigError("local optimizer tolerance must be positive");
  if (max_evals < n + 2) {
    std::ostringstream msg;
    msg << "local optimizer max_evals must be at least n + 2 = " << n + 2;
    throw ConfigError(msg.str());
  }
}

namespace detail {

void CountedObjective::charge(std::uint64_t k) {
  if (count_ + k > max_evals_) throw BudgetExhausted{};
  count_ += k;
}

void CountedObjective::record(std::span<const double> x, double f) {
  if (f < best_f_) {
    best_f_ = f;
    std::copy(x.begin(), x.end(), best_x_.begin());
  }
  trace_.push_back(best_f_);
}

double CountedObjective::operator()(std::span<const double> x) {
  charge(1);
  scratch_.assign(x.begin(), x.end());
  box_.clamp(scratch_);
  const double f = fn_.evaluate_unchecked(scratch_);
  record(scratch_, f);
  return f;
}

double CountedObjective::value_and_gradient(std::span<const double> x, std::span<double> grad) {
  const std::uint64_t extra = fn_.has_analytic_gradient() ? 0 : 2 * dim();
  charge(1 + extra);
  scratch_.assign(x.begin(), x.end());
  box_.clamp(scratch_);
  const double f = fn_.evaluate_unchecked(scratch_);
  fn_.gradient(scratch_, grad);
  record(scratch_, f);
  // Finite-difference probes are charged but do not enter the best-so-far.
  for (std::uint64_t k = 0; k < extra; ++k) trace_.push_back(best_f_);
  return f;
}

}  // namespace detail

LocalResult minimize_local(const TestFunction& fn, const BoxDomain& domain,
                           std::span<const double> start, const LocalOptimizerConfig& cfg,
                           EffortLedger& ledger) {
  cfg.validate(domain.dim());
  if (start.size() != domain.dim()) throw DomainError("start point dimension mismatch");
  if (!domain.contains(start, 1e-9)) throw DomainError("start point lies outside the domain");

  std::vector<double> x0(start.begin(), start.end());
  domain.clamp(x0);
  detail::CountedObjective objective(fn, domain, cfg.max_evals);

  bool converged = false;
  try {
    switch (cfg.routine) {
      case Routine::nmead:
        converged = detail::run_nelder_mead(objective, x0, cfg.tolerance);
        break;
      case Routine::lbfgs:
        converged = detail::run_lbfgs(objective, x0, cfg.tolerance);
        break;
      case Routine::qmodel:
        converged = detail::run_qmodel(objective, x0, cfg.tolerance);
        break;
    }
  } catch (const detail::BudgetExhausted&) {
    converged = false;
  }

  ledger.add_evaluations(objective.evaluations());
  LocalResult result;
  result.point = objective.best_point();
  result.value = objective.best_value();
  result.evaluations = objective.evaluations();
  result.converged = converged;
  result.best_trace = std::move(objective.trace());
  return result;
}

std::uint64_t descend_on_grid(const DiscretizedObjective& d, std::uint64_t start,
                              EffortLedger& ledger) {
  const GridSpec& grid = d.grid();
  std::map<std::uint64_t, double> seen;
  auto read = [&](std::uint64_t i) {
    auto it = seen.find(i);
    if (it != seen.end()) return it->second;
    const double v = d.value_at(i, ledger);
    seen.emplace(i, v);
    return v;
  };

  std::uint64_t current = start;
  double current_value = read(current);
  for (;;) {
    std::uint64_t best = current;
    double best_value = current_value;
    std::uint64_t stride = 1;
    const auto digits = grid.digits(current);
    for (std::size_t k = 0; k < grid.dim(); ++k) {
      if (digits[k] > 0) {
        const std::uint64_t j = current - stride;
        const double v = read(j);
        if (v < best_value) {
          best_value = v;
          best = j;
        }
      }
      if (digits[k] + 1 < grid.points_per_axis()) {
        const std::uint64_t j = current + stride;
        const double v = read(j);
        if (v < best_value) {
          best_value = v;
          best = j;
        }
      }
      stride *= grid.points_per_axis();
    }
    if (best == current) return current;
    current = best;
    current_value = best_value;
  }
}

}  // namespace gopt
