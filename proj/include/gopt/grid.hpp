#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gopt/testbed.hpp"

namespace gopt {

// Endpoint-inclusive lattice of P points per axis over a box. Index i is the
// mixed-radix number (base P) whose least significant digit is axis 0.
class GridSpec {
 public:
  GridSpec(BoxDomain domain, std::uint64_t points_per_axis);

  const BoxDomain& domain() const { return domain_; }
  std::uint64_t points_per_axis() const { return points_; }
  std::size_t dim() const { return domain_.dim(); }
  std::uint64_t size() const { return size_; }
  const std::vector<double>& eps() const { return eps_; }
  double min_eps() const;

  std::vector<double> index_to_point(std::uint64_t i) const;
  void index_to_point(std::uint64_t i, std::span<double> out) const;

  // Nearest-grid-point snap. Points within one cell outside the box are
  // clamped; anything further away is a DomainError.
  std::uint64_t point_to_index(std::span<const double> x) const;

  // Per-axis digits of an index.
  std::vector<std::uint64_t> digits(std::uint64_t i) const;
  std::uint64_t from_digits(std::span<const std::uint64_t> digits) const;

  double coordinate(std::size_t axis, std::uint64_t digit) const;

 private:
  BoxDomain domain_;
  std::uint64_t points_;
  std::uint64_t size_;
  std::vector<double> eps_;
};

}  // namespace gopt
