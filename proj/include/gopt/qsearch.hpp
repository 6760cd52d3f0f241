#pragma once

#include <cstdint>
#include <optional>

#include "gopt/oracle.hpp"
#include "gopt/rng.hpp"

namespace gopt {

// Probability that a measurement after r Grover iterations returns one of
// `marked` out of N indices: sin^2((2r+1) theta) with sin^2(theta) = marked/N.
double success_probability(std::uint64_t r, std::uint64_t marked, std::uint64_t N);

// Same quantity by iterating the two-amplitude Grover recurrence r times.
// Independent of the closed form; kept as its correctness oracle.
double amplitude_recurrence_probability(std::uint64_t r, std::uint64_t marked, std::uint64_t N);

// One simulated Grover run: r rotations marking {values < y}, then a
// measurement. Charges r rotations and one measurement.
std::uint64_t measure(const DiscretizedObjective& d, double y, std::uint64_t r, Rng& rng,
                      EffortLedger& ledger);

// Upper limit on the BBHT growth factor.
inline constexpr double kMaxLambda = 1.34;

struct BbhtParams {
  double lambda = 8.0 / 7.0;
  double initial_m = 1.0;
  // Cap on m; <= 0 means sqrt(N).
  double m_cap = 0.0;

  void validate() const;
  double cap_for(std::uint64_t N) const;
};

// Rotation count drawn uniformly from {0, ..., ceil(m) - 1}.
std::uint64_t draw_rotations(double m, Rng& rng);

// BBHT search for an index with values < y when the marked count is unknown.
// Each measured outcome is checked against y; the check is accounted by the
// measurement counter. Returns nullopt once the next attempt would exceed
// rotation_budget.
std::optional<std::uint64_t> bbht_search(const DiscretizedObjective& d, double y,
                                         const BbhtParams& params, Rng& rng, EffortLedger& ledger,
                                         std::optional<std::uint64_t> rotation_budget = {});

}  // namespace gopt
