#include "gopt/qsearch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gopt/errors.hpp"

namespace gopt {

double success_probability(std::uint64_t r, std::uint64_t marked, std::uint64_t N) {
  if (N == 0 || marked == 0) return 0.0;
  if (marked >= N) return 1.0;
  const double theta = std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(N)));
  const double s = std::sin((2.0 * static_cast<double>(r) + 1.0) * theta);
  return std::clamp(s * s, 0.0, 1.0);
}

double amplitude_recurrence_probability(std::uint64_t r, std::uint64_t marked, std::uint64_t N) {
  if (N == 0 || marked == 0) return 0.0;
  if (marked >= N) return 1.0;
  const double n = static_cast<double>(N);
  const double m = static_cast<double>(marked);
  // a: amplitude on each marked index, b: on each unmarked index.
  double a = 1.0 / std::sqrt(n);
  double b = a;
  const double diag = (n - 2.0 * m) / n;
  for (std::uint64_t step = 0; step < r; ++step) {
    const double a_next = diag * a + 2.0 * (n - m) / n * b;
    const double b_next = -2.0 * m / n * a + diag * b;
    a = a_next;
    b = b_next;
  }
  return m * a * a;
}

std::uint64_t measure(const DiscretizedObjective& d, double y, std::uint64_t r, Rng& rng,
                      EffortLedger& ledger) {
  ledger.add_rotations(r);
  ledger.add_measurement();
  const std::uint64_t marked = d.count_below(y);
  if (marked == 0) return d.sample_geq(y, rng);
  if (marked == d.size()) return d.sample_below(y, rng);
  return rng.bernoulli(success_probability(r, marked, d.size())) ? d.sample_below(y, rng)
                                                                 : d.sample_geq(y, rng);
}

void BbhtParams::validate() const {
  if (!(lambda > 1.0 && lambda <= kMaxLambda)) {
    std::ostringstream msg;
    msg << "lambda must lie in (1, " << kMaxLambda << "], got " << lambda;
    throw ConfigError(msg.str());
  }
  if (!(initial_m >= 1.0)) throw ConfigError("initial_m must be at least 1");
}

double BbhtParams::cap_for(std::uint64_t N) const {
  return m_cap > 0.0 ? m_cap : std::sqrt(static_cast<double>(N));
}

std::uint64_t draw_rotations(double m, Rng& rng) {
  const auto k = static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)));
  return rng.uniform_index(k);
}

std::optional<std::uint64_t> bbht_search(const DiscretizedObjective& d, double y,
                                         const BbhtParams& params, Rng& rng, EffortLedger& ledger,
                                         std::optional<std::uint64_t> rotation_budget) {
  params.validate();
  const double cap = params.cap_for(d.size());
  // An empty marked set with no budget would loop forever; the simulator
  // knows |M| and reports absence directly.
  if (!rotation_budget && d.count_below(y) == 0) return std::nullopt;
  double m = params.initial_m;
  std::uint64_t spent = 0;
  for (;;) {
    const std::uint64_t j = draw_rotations(m, rng);
    if (rotation_budget && spent + j > *rotation_budget) return std::nullopt;
    spent += j;
    const std::uint64_t x = measure(d, y, j, rng, ledger);
    // The membership check is part of the measurement just charged.
    if (d.value(x) < y) return x;
    m = std::min(params.lambda * m, cap);
  }
}

}  // namespace gopt
