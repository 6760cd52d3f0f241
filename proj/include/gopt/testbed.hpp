#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gopt {

class GridSpec;

// Axis-aligned box. lower.size() == upper.size() >= 1 and lower[k] < upper[k].
struct BoxDomain {
  std::vector<double> lower;
  std::vector<double> upper;

  BoxDomain() = default;
  BoxDomain(std::vector<double> lo, std::vector<double> hi);

  // Same interval on every axis.
  static BoxDomain cube(std::size_t n, double lo, double hi);

  std::size_t dim() const { return lower.size(); }
  double width(std::size_t k) const { return upper[k] - lower[k]; }
  bool contains(std::span<const double> x, double slack = 0.0) const;
  void clamp(std::span<double> x) const;

  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;
};

enum class Provenance { analytic, grid_scan };

struct ReferenceMin {
  double value;
  std::vector<double> site;
  Provenance provenance;
};

// A named continuous objective on a box, valid for a range of dimensions.
// Instances are immutable; evaluation is pure and thread-safe.
class TestFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;
  using ReferenceFn = std::function<std::optional<ReferenceMin>(std::size_t)>;

  TestFunction(std::string name, double axis_lower, double axis_upper, std::size_t min_arity,
               std::size_t max_arity, Evaluator eval, GradientFn grad = {},
               ReferenceFn reference = {}, std::vector<std::size_t> degenerate_arities = {});

  const std::string& name() const { return name_; }
  std::size_t min_arity() const { return min_arity_; }
  std::size_t max_arity() const { return max_arity_; }
  bool supports(std::size_t n) const { return n >= min_arity_ && n <= max_arity_; }

  // Throws ArityError for unsupported n.
  BoxDomain domain(std::size_t n) const;

  // Checked evaluation: throws ArityError / DomainError.
  double evaluate(std::span<const double> x) const;
  // No bounds or arity checks; used inside optimizers that already clamp.
  double evaluate_unchecked(std::span<const double> x) const { return eval_(x); }

  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }
  // Analytic gradient when available, otherwise central differences with
  // step 1e-6 times the axis width.
  std::vector<double> gradient(std::span<const double> x) const;
  void gradient(std::span<const double> x, std::span<double> out) const;

  std::optional<ReferenceMin> reference_min(std::size_t n) const;

  // True when the formula collapses to a constant at this dimension
  // (e.g. the Rosenbrock sum is empty at n = 1).
  bool degenerate(std::size_t n) const;

 private:
  void check_arity(std::size_t n) const;

  std::string name_;
  double axis_lower_;
  double axis_upper_;
  std::size_t min_arity_;
  std::size_t max_arity_;
  Evaluator eval_;
  GradientFn grad_;
  ReferenceFn reference_;
  std::vector<std::size_t> degenerate_;
};

void finite_difference_gradient(const TestFunction& fn, std::span<const double> x,
                                std::span<double> out);

// Shekel coefficients: centers[i] is the i-th center (one coordinate per
// axis), weights[i] the matching c_i. Arity is limited by the center length.
struct ShekelTable {
  std::vector<std::vector<double>> centers;
  std::vector<double> weights;

  // Standard Shekel-5 table rescaled from [0,10] onto [-1,1] via (a - 5) / 5.
  static ShekelTable rescaled_shekel5();
};

TestFunction make_neumaier();
TestFunction make_griewank();
TestFunction make_shekel(ShekelTable table = ShekelTable::rescaled_shekel5());
TestFunction make_rosenbrock();
TestFunction make_michalewicz(double steepness = 10.0);
TestFunction make_dejong();
TestFunction make_ackley();
TestFunction make_schwefel();
TestFunction make_rastrigin();
TestFunction make_raydan();

// The ten registry functions, in table order.
const std::vector<TestFunction>& all_functions();
// Lookup by lowercase name; throws ConfigError for unknown names.
const TestFunction& find_function(std::string_view name);

// Exhaustive scan over every grid point; ties go to the smallest index.
std::pair<std::uint64_t, double> reference_global_min(const TestFunction& fn, const GridSpec& grid);

}  // namespace gopt
