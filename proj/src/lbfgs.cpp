#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <vector>

#include "localopt_detail.hpp"

namespace gopt::detail {

namespace {

constexpr std::size_t kHistory = 5;
constexpr double kArmijo = 1e-4;
constexpr double kFirstStep = 0.05;  // of the narrowest axis width

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Pair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion: returns -H * g.
std::vector<double> direction(const std::deque<Pair>& history, std::span<const double> g) {
  std::vector<double> q(g.begin(), g.end());
  std::vector<double> alpha(history.size());
  for (std::size_t i = history.size(); i-- > 0;) {
    alpha[i] = history[i].rho * dot(history[i].s, q);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] -= alpha[i] * history[i].y[k];
  }
  const Pair& last = history.back();
  const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
  for (double& v : q) v *= gamma;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double beta = history[i].rho * dot(history[i].y, q);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] += history[i].s[k] * (alpha[i] - beta);
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

bool run_lbfgs(CountedObjective& f, std::span<const double> start, double tol) {
  const std::size_t n = f.dim();
  const BoxDomain& box = f.box();
  double min_width = box.width(0);
  for (std::size_t k = 1; k < n; ++k) min_width = std::min(min_width, box.width(k));

  std::vector<double> x(start.begin(), start.end());
  std::vector<double> g(n);
  double fx = f.value_and_gradient(x, g);
  std::deque<Pair> history;

  std::vector<double> trial(n);
  std::vector<double> g_trial(n);
  std::vector<double> step(n);
  for (;;) {
    std::vector<double> d;
    if (!history.empty()) d = direction(history, g);
    // Fall back to scaled steepest descent when there is no usable curvature.
    if (d.empty() || dot(d, g) >= 0.0) {
      history.clear();
      const double gmax = max_abs(g);
      if (gmax == 0.0) return true;
      d.assign(n, 0.0);
      for (std::size_t k = 0; k < n; ++k) d[k] = -g[k] * (kFirstStep * min_width / gmax);
    }
    // Do not push against active bounds.
    for (std::size_t k = 0; k < n; ++k) {
      if ((x[k] <= box.lower[k] && d[k] < 0.0) || (x[k] >= box.upper[k] && d[k] > 0.0)) d[k] = 0.0;
    }
    if (max_abs(d) < tol) return true;

    double alpha = 1.0;
    double f_trial = 0.0;
    for (;;) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = x[k] + alpha * d[k];
      box.clamp(trial);
      for (std::size_t k = 0; k < n; ++k) step[k] = trial[k] - x[k];
      if (max_abs(step) < tol) return true;
      f_trial = f.value_and_gradient(trial, g_trial);
      if (f_trial <= fx + kArmijo * dot(g, step)) break;
      alpha *= 0.5;
    }

    Pair p{step, std::vector<double>(n), 0.0};
    for (std::size_t k = 0; k < n; ++k) p.y[k] = g_trial[k] - g[k];
    const double sy = dot(p.s, p.y);
    if (sy > 1e-12 * std::sqrt(dot(p.s, p.s) * dot(p.y, p.y))) {
      p.rho = 1.0 / sy;
      history.push_back(std::move(p));
      if (history.size() > kHistory) history.pop_front();
    }

    x = trial;
    g = g_trial;
    fx = f_trial;
  }
}

}  // namespace gopt::detail
