#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "localopt_detail.hpp"

namespace gopt::detail {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
constexpr double kInitialEdge = 0.05;

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

bool run_nelder_mead(CountedObjective& f, std::span<const double> start, double tol) {
  const std::size_t n = f.dim();
  const BoxDomain& box = f.box();

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({std::vector<double>(start.begin(), start.end()), f(start)});
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> v(start.begin(), start.end());
    const double h = kInitialEdge * box.width(k);
    // Step toward the interior when the start sits near the upper bound.
    v[k] = (v[k] + h <= box.upper[k]) ? v[k] + h : v[k] - h;
    box.clamp(v);
    const double fv = f(v);
    simplex.push_back({std::move(v), fv});
  }

  auto point_along = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                         double coef) {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + coef * (centroid[k] - worst[k]);
    box.clamp(p);
    return p;
  };

  std::vector<double> centroid(n);
  for (;;) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        diameter = std::max(diameter, std::abs(simplex[i].x[k] - simplex[0].x[k]));
      }
    }
    if (diameter < tol) return true;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i].x[k] / static_cast<double>(n);
    }
    Vertex& worst = simplex[n];

    auto xr = point_along(centroid, worst.x, kReflect);
    const double fr = f(xr);
    if (fr < simplex[0].f) {
      auto xe = point_along(centroid, worst.x, kExpand);
      const double fe = f(xe);
      worst = (fe < fr) ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
      continue;
    }
    if (fr < simplex[n - 1].f) {
      worst = {std::move(xr), fr};
      continue;
    }

    // Outside contraction if the reflection beat the worst point, inside otherwise.
    const bool outside = fr < worst.f;
    auto xc = point_along(centroid, worst.x, outside ? kContract * kReflect : -kContract);
    const double fc = f(xc);
    if (fc < std::min(fr, worst.f)) {
      worst = {std::move(xc), fc};
      continue;
    }

    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        simplex[i].x[k] = simplex[0].x[k] + kShrink * (simplex[i].x[k] - simplex[0].x[k]);
      }
      simplex[i].f = f(simplex[i].x);
    }
  }
}

}  // namespace gopt::detail
