#include "gopt/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "gopt/errors.hpp"
#include "gopt/grid.hpp"

namespace gopt {

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
constexpr double kPi = std::numbers::pi;

std::optional<ReferenceMin> at_origin(std::size_t n) {
  return ReferenceMin{0.0, std::vector<double>(n, 0.0), Provenance::analytic};
}

}  // namespace

BoxDomain::BoxDomain(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw DomainError("box bounds must be non-empty and of equal length");
  }
  for (std::size_t k = 0; k < lower.size(); ++k) {
    if (!(lower[k] < upper[k])) {
      std::ostringstream msg;
      msg << "box axis " << k << " has lower " << lower[k] << " >= upper " << upper[k];
      throw DomainError(msg.str());
    }
  }
}

BoxDomain BoxDomain::cube(std::size_t n, double lo, double hi) {
  return BoxDomain(std::vector<double>(n, lo), std::vector<double>(n, hi));
}

bool BoxDomain::contains(std::span<const double> x, double slack) const {
  if (x.size() != dim()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double s = slack * width(k);
    if (!(x[k] >= lower[k] - s && x[k] <= upper[k] + s)) return false;
  }
  return true;
}

void BoxDomain::clamp(std::span<double> x) const {
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::clamp(x[k], lower[k], upper[k]);
}

TestFunction::TestFunction(std::string name, double axis_lower, double axis_upper,
                           std::size_t min_arity, std::size_t max_arity, Evaluator eval,
                           GradientFn grad, ReferenceFn reference,
                           std::vector<std::size_t> degenerate_arities)
    : name_(std::move(name)),
      axis_lower_(axis_lower),
      axis_upper_(axis_upper),
      min_arity_(min_arity),
      max_arity_(max_arity),
      eval_(std::move(eval)),
      grad_(std::move(grad)),
      reference_(std::move(reference)),
      degenerate_(std::move(degenerate_arities)) {}

void TestFunction::check_arity(std::size_t n) const {
  if (!supports(n)) {
    std::ostringstream msg;
    msg << name_ << " does not support " << n << " variable(s)";
    throw ArityError(msg.str());
  }
}

BoxDomain TestFunction::domain(std::size_t n) const {
  check_arity(n);
  return BoxDomain::cube(n, axis_lower_, axis_upper_);
}

double TestFunction::evaluate(std::span<const double> x) const {
  check_arity(x.size());
  const double slack = 1e-12 * (axis_upper_ - axis_lower_);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] >= axis_lower_ - slack && x[k] <= axis_upper_ + slack)) {
      std::ostringstream msg;
      msg << name_ << ": coordinate " << k << " = " << x[k] << " outside [" << axis_lower_
          << ", " << axis_upper_ << "]";
      throw DomainError(msg.str());
    }
  }
  return eval_(x);
}

std::vector<double> TestFunction::gradient(std::span<const double> x) const {
  std::vector<double> g(x.size());
  gradient(x, g);
  return g;
}

void TestFunction::gradient(std::span<const double> x, std::span<double> out) const {
  if (grad_) {
    grad_(x, out);
  } else {
    finite_difference_gradient(*this, x, out);
  }
}

std::optional<ReferenceMin> TestFunction::reference_min(std::size_t n) const {
  check_arity(n);
  if (!reference_) return std::nullopt;
  return reference_(n);
}

bool TestFunction::degenerate(std::size_t n) const {
  return std::find(degenerate_.begin(), degenerate_.end(), n) != degenerate_.end();
}

void finite_difference_gradient(const TestFunction& fn, std::span<const double> x,
                                std::span<double> out) {
  const BoxDomain box = fn.domain(x.size());
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double h = 1e-6 * box.width(k);
    probe[k] = x[k] + h;
    const double up = fn.evaluate_unchecked(probe);
    probe[k] = x[k] - h;
    const double down = fn.evaluate_unchecked(probe);
    probe[k] = x[k];
    out[k] = (up - down) / (2.0 * h);
  }
}

ShekelTable ShekelTable::rescaled_shekel5() {
  const std::vector<std::vector<double>> raw = {
      {4, 4, 4, 4}, {1, 1, 1, 1}, {8, 8, 8, 8}, {6, 6, 6, 6}, {3, 7, 3, 7}};
  ShekelTable t;
  for (const auto& row : raw) {
    std::vector<double> c;
    for (double a : row) c.push_back((a - 5.0) / 5.0);
    t.centers.push_back(std::move(c));
  }
  t.weights = {0.1, 0.2, 0.2, 0.4, 0.4};
  return t;
}

TestFunction make_neumaier() {
  auto eval = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += (v - 1.0) * (v - 1.0);
    for (std::size_t i = 1; i < x.size(); ++i) s -= x[i] * x[i - 1];
    return s;
  };
  auto grad = [](std::span<const double> x, std::span<double> g) {
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < n; ++k) {
      g[k] = 2.0 * (x[k] - 1.0);
      if (k >= 1) g[k] -= x[k - 1];
      if (k + 1 < n) g[k] -= x[k + 1];
    }
  };
  // Trid minimum x_i = (i+1)(n-i), inside [0,4] only up to n = 3.
  auto ref = [](std::size_t n) -> std::optional<ReferenceMin> {
    if (n > 3) return std::nullopt;
    std::vector<double> site(n);
    for (std::size_t i = 0; i < n; ++i) site[i] = static_cast<double>((i + 1) * (n - i));
    const double nn = static_cast<double>(n);
    return ReferenceMin{-nn * (nn + 4.0) * (nn - 1.0) / 6.0, site, Provenance::analytic};
  };
  return TestFunction("neumaier", 0.0, 4.0, 1, kUnbounded, eval, grad, ref);
}

TestFunction make_griewank() {
  auto eval = [](std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sum += x[i] * x[i];
      prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
  };
  auto grad = [](std::span<const double> x, std::span<double> g) {
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < n; ++k) {
      double others = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) others *= std::cos(x[j] / std::sqrt(static_cast<double>(j + 1)));
      }
      const double s = std::sqrt(static_cast<double>(k + 1));
      g[k] = x[k] / 2000.0 + std::sin(x[k] / s) / s * others;
    }
  };
  return TestFunction("griewank", -40.0, 40.0, 1, kUnbounded, eval, grad, at_origin);
}

TestFunction make_shekel(ShekelTable table) {
  if (table.centers.empty() || table.centers.size() != table.weights.size()) {
    throw ConfigError("shekel table: centers and weights must be non-empty and equal length");
  }
  std::size_t arity = table.centers.front().size();
  for (const auto& c : table.centers) arity = std::min(arity, c.size());
  auto shared = std::make_shared<const ShekelTable>(std::move(table));

  auto eval = [shared](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < shared->centers.size(); ++i) {
      double den = shared->weights[i];
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double d = x[j] - shared->centers[i][j];
        den += d * d;
      }
      s += 1.0 / den;
    }
    return s;
  };
  auto grad = [shared](std::span<const double> x, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t i = 0; i < shared->centers.size(); ++i) {
      double den = shared->weights[i];
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double d = x[j] - shared->centers[i][j];
        den += d * d;
      }
      for (std::size_t j = 0; j < x.size(); ++j) {
        g[j] -= 2.0 * (x[j] - shared->centers[i][j]) / (den * den);
      }
    }
  };
  return TestFunction("shekel", -1.0, 1.0, 1, arity, eval, grad);
}

TestFunction make_rosenbrock() {
  auto eval = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double a = 1.0 - x[i];
      const double b = x[i + 1] - x[i] * x[i];
      s += a * a + 100.0 * b * b;
    }
    return s;
  };
  auto grad = [](std::span<const double> x, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double b = x[i + 1] - x[i] * x[i];
      g[i] += -2.0 * (1.0 - x[i]) - 400.0 * x[i] * b;
      g[i + 1] += 200.0 * b;
    }
  };
  auto ref = [](std::size_t n) -> std::optional<ReferenceMin> {
    if (n < 2) return std::nullopt;
    return ReferenceMin{0.0, std::vector<double>(n, 1.0), Provenance::analytic};
  };
  return TestFunction("rosenbrock", -30.0, 30.0, 1, kUnbounded, eval, grad, ref, {1});
}

TestFunction make_michalewicz(double steepness) {
  // The first term carries a factor i = 0 and vanishes, so n = 1 is constant.
  auto eval = [steepness](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double inner = std::sin(static_cast<double>(i) * x[i] * x[i] / kPi);
      s += std::sin(x[i]) * std::pow(inner * inner, steepness);
    }
    return -s;
  };
  return TestFunction("michalewicz", 0.0, 10.0, 1, kUnbounded, eval, {}, {}, {1});
}

TestFunction make_dejong() {
  auto eval = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  auto grad = [](std::span<const double> x, std::span<double> g) {
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = 2.0 * x[k];
  };
  return TestFunction("dejong", -5.12, 5.12, 1, kUnbounded, eval, grad, at_origin);
}

TestFunction make_ackley() {
  auto eval = [](std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
      sq += v * v;
      cs += std::cos(2.0 * kPi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::exp(1.0);
  };
  auto grad = [](std::span<const double> x, std::span<double> g) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
      sq += v * v;
      cs += std::cos(2.0 * kPi * v);
    }
    const double r = std::sqrt(sq / n);
    const double e1 = std::exp(-0.2 * r);
    const double e2 = std::exp(cs / n);
    for (std::size_t k = 0; k < x.size(); ++k) {
      // The radial term is not differentiable at the origin; use 0 there.
      const double radial = r > 0.0 ? 4.0 * e1 * x[k] / (n * r) : 0.0;
      g[k] = radial + e2 * 2.0 * kPi * std::sin(2.0 * kPi * x[k]) / n;
    }
  };
  return TestFunction("ackley", -15.0, 20.0, 1, kUnbounded, eval, grad, at_origin);
}

TestFunction make_schwefel() {
  auto eval = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * std::sin(std::sqrt(std::abs(v)));
    return -s;
  };
  auto grad = [](std::span<const double> x, std::span<double> g) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double r = std::sqrt(std::abs(x[k]));
      g[k] = -(std::sin(r) + 0.5 * r * std::cos(r));
    }
  };
  // On [-20, 20] each term is smallest at the lower bound.
  auto ref = [](std::size_t n) -> std::optional<ReferenceMin> {
    const double per_axis = 20.0 * std::sin(std::sqrt(20.0));
    return ReferenceMin{static_cast<double>(n) * per_axis, std::vector<double>(n, -20.0),
                        Provenance::analytic};
  };
  return TestFunction("schwefel", -20.0, 20.0, 1, kUnbounded, eval, grad, ref);
}

TestFunction make_rastrigin() {
  auto eval = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
    return s;
  };
  auto grad = [](std::span<const double> x, std::span<double> g) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      g[k] = 2.0 * x[k] + 20.0 * kPi * std::sin(2.0 * kPi * x[k]);
    }
  };
  return TestFunction("rastrigin", -5.12, 5.12, 1, kUnbounded, eval, grad, at_origin);
}

TestFunction make_raydan() {
  auto eval = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      s += static_cast<double>(i + 1) / 10.0 * (std::exp(x[i]) - x[i]);
    }
    return -s;
  };
  auto grad = [](std::span<const double> x, std::span<double> g) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      g[k] = -static_cast<double>(k + 1) / 10.0 * (std::exp(x[k]) - 1.0);
    }
  };
  // Leading minus: exp(x) - x is largest at the upper bound.
  auto ref = [](std::size_t n) -> std::optional<ReferenceMin> {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v -= static_cast<double>(i + 1) / 10.0 * (std::exp(5.12) - 5.12);
    }
    return ReferenceMin{v, std::vector<double>(n, 5.12), Provenance::analytic};
  };
  return TestFunction("raydan", -5.12, 5.12, 1, kUnbounded, eval, grad, ref);
}

const std::vector<TestFunction>& all_functions() {
  static const std::vector<TestFunction> registry = {
      make_neumaier(), make_griewank(), make_shekel(),   make_rosenbrock(), make_michalewicz(),
      make_dejong(),   make_ackley(),   make_schwefel(), make_rastrigin(),  make_raydan(),
  };
  return registry;
}

const TestFunction& find_function(std::string_view name) {
  for (const auto& fn : all_functions()) {
    if (fn.name() == name) return fn;
  }
  throw ConfigError("unknown function '" + std::string(name) + "'");
}

std::pair<std::uint64_t, double> reference_global_min(const TestFunction& fn,
                                                      const GridSpec& grid) {
  if (!fn.supports(grid.dim())) {
    throw ArityError(fn.name() + " does not support the grid dimension");
  }
  std::vector<double> point(grid.dim());
  std::uint64_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < grid.size(); ++i) {
    grid.index_to_point(i, point);
    const double v = fn.evaluate_unchecked(point);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  return {best, best_value};
}

}  // namespace gopt
