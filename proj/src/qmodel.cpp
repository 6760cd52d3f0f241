#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "localopt_detail.hpp"

namespace gopt::detail {

namespace {

constexpr double kInitialRadius = 0.01;  // fraction of each axis width
constexpr double kMaxRadius = 0.5;
constexpr double kPivotFloor = 1e-10;

struct Sample {
  std::vector<double> x;
  double f;
};

// Diagonal quadratic m(c + s) = a + g.s + 1/2 sum h_k s_k^2.
struct Model {
  double a;
  std::vector<double> g;
  std::vector<double> h;
};

// Two offsets along one axis for the interpolation stencil. Central when
// both sides fit, otherwise one-sided into the roomier half.
std::pair<double, double> stencil(double center, double lo, double hi, double r) {
  const double up = hi - center;
  const double down = center - lo;
  if (up >= r && down >= r) return {r, -r};
  if (up >= down) return {std::min(r, up / 2.0), std::min(2.0 * r, up)};
  return {-std::min(r, down / 2.0), -std::min(2.0 * r, down)};
}

// Interpolates the 2n+1 samples around `center`. Columns are scaled by the
// trust radius so the pivot test is scale free; nullopt when the sample
// geometry is degenerate.
std::optional<Model> fit(const std::vector<Sample>& set, std::span<const double> center,
                         std::span<const double> radius) {
  const std::size_t n = center.size();
  const std::size_t dim = 2 * n + 1;
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim + 1));
  for (std::size_t row = 0; row < dim; ++row) {
    a[row][0] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double s = (set[row].x[k] - center[k]) / radius[k];
      a[row][1 + k] = s;
      a[row][1 + n + k] = 0.5 * s * s;
    }
    a[row][dim] = set[row].f;
  }
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < dim; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < kPivotFloor) return std::nullopt;
    std::swap(a[col], a[pivot]);
    for (std::size_t row = 0; row < dim; ++row) {
      if (row == col) continue;
      const double factor = a[row][col] / a[col][col];
      for (std::size_t c = col; c <= dim; ++c) a[row][c] -= factor * a[col][c];
    }
  }
  Model m{a[0][dim] / a[0][0], std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    m.g[k] = a[1 + k][dim] / a[1 + k][1 + k] / radius[k];
    m.h[k] = a[1 + n + k][dim] / a[1 + n + k][1 + n + k] / (radius[k] * radius[k]);
  }
  return m;
}

}  // namespace

// Derivative-free trust-region method on a diagonal quadratic model. The
// model interpolates 2n+1 points; each iteration evaluates one trial point,
// which replaces the sample farthest from the incumbent. The sample set is
// rebuilt as an axis stencil when its geometry degenerates.
bool run_qmodel(CountedObjective& f, std::span<const double> start, double tol) {
  const std::size_t n = f.dim();
  const BoxDomain& box = f.box();

  double rho = kInitialRadius;
  for (std::size_t k = 0; k < n; ++k) rho = std::max(rho, 2.0 * tol / box.width(k));
  std::vector<double> radius(n);
  auto set_radius = [&] {
    for (std::size_t k = 0; k < n; ++k) radius[k] = rho * box.width(k);
  };
  set_radius();

  std::vector<Sample> set;
  auto rebuild = [&](const Sample& center) {
    set.assign(1, center);
    for (std::size_t k = 0; k < n; ++k) {
      const auto [s1, s2] = stencil(center.x[k], box.lower[k], box.upper[k], radius[k]);
      for (double s : {s1, s2}) {
        Sample p{center.x, 0.0};
        p.x[k] += s;
        p.f = f(p.x);
        set.push_back(std::move(p));
      }
    }
  };

  {
    Sample first{std::vector<double>(start.begin(), start.end()), 0.0};
    first.f = f(first.x);
    rebuild(first);
  }

  std::vector<double> step(n);
  std::vector<double> trial(n);
  for (;;) {
    const auto best_it = std::min_element(set.begin(), set.end(),
                                          [](const Sample& a, const Sample& b) { return a.f < b.f; });
    const Sample best = *best_it;

    double radius_max = 0.0;
    for (double r : radius) radius_max = std::max(radius_max, r);
    if (radius_max < tol) return true;

    const auto model = fit(set, best.x, radius);
    if (!model) {
      rebuild(best);
      continue;
    }

    double predicted = 0.0;
    double step_rel = 0.0;
    double step_max = 0.0;
    bool on_bound = false;
    for (std::size_t k = 0; k < n; ++k) {
      const double g = model->g[k];
      const double h = model->h[k];
      double s = 0.0;
      if (h > 0.0) {
        s = -g / h;
      } else if (g != 0.0) {
        s = g > 0.0 ? -radius[k] : radius[k];
      }
      if (std::abs(s) >= radius[k]) {
        s = std::copysign(radius[k], s);
        on_bound = true;
      }
      s = std::clamp(best.x[k] + s, box.lower[k], box.upper[k]) - best.x[k];
      step[k] = s;
      predicted -= g * s + 0.5 * h * s * s;
      step_rel = std::max(step_rel, std::abs(s) / box.width(k));
      step_max = std::max(step_max, std::abs(s));
    }

    if (step_max < tol) {
      // Trust a tiny step only when the model was built from nearby samples.
      double spread = 0.0;
      for (const auto& p : set) {
        for (std::size_t k = 0; k < n; ++k) {
          spread = std::max(spread, std::abs(p.x[k] - best.x[k]) / radius[k]);
        }
      }
      if (spread <= 2.0) return true;
      rebuild(best);
      continue;
    }

    for (std::size_t k = 0; k < n; ++k) trial[k] = best.x[k] + step[k];
    const double ft = f(trial);
    const bool improved = ft < best.f;
    const std::vector<double>& anchor = improved ? trial : best.x;

    // Replace the sample farthest from the new incumbent (never the incumbent).
    std::size_t victim = set.size();
    double far = -1.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (!improved && set[i].x == best.x) continue;
      double dist = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        dist = std::max(dist, std::abs(set[i].x[k] - anchor[k]) / box.width(k));
      }
      if (dist > far) {
        far = dist;
        victim = i;
      }
    }
    set[victim] = Sample{trial, ft};

    const double ratio = predicted > 0.0 ? (best.f - ft) / predicted : -1.0;
    if (improved && on_bound && ratio > 0.75) {
      rho = std::min(2.0 * rho, kMaxRadius);
    } else if (improved && ratio > 0.1) {
      rho = std::max(step_rel, 0.1 * rho);
    } else {
      rho *= 0.5;
    }
    set_radius();
  }
}

}  // namespace gopt::detail
