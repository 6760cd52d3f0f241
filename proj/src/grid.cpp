#include "gopt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gopt/errors.hpp"

namespace gopt {

GridSpec::GridSpec(BoxDomain domain, std::uint64_t points_per_axis)
    : domain_(std::move(domain)), points_(points_per_axis), size_(1) {
  if (points_ < 2) throw ConfigError("points per axis must be at least 2");
  if (domain_.dim() == 0) throw ConfigError("grid domain must have at least one axis");
  for (std::size_t k = 0; k < domain_.dim(); ++k) {
    if (size_ > std::numeric_limits<std::uint64_t>::max() / points_) {
      std::ostringstream msg;
      msg << "grid size " << points_ << "^" << domain_.dim() << " overflows 64 bits";
      throw CapacityError(msg.str());
    }
    size_ *= points_;
    eps_.push_back(domain_.width(k) / static_cast<double>(points_ - 1));
  }
}

double GridSpec::min_eps() const { return *std::min_element(eps_.begin(), eps_.end()); }

double GridSpec::coordinate(std::size_t axis, std::uint64_t digit) const {
  if (digit == points_ - 1) return domain_.upper[axis];
  return domain_.lower[axis] + static_cast<double>(digit) * eps_[axis];
}

std::vector<double> GridSpec::index_to_point(std::uint64_t i) const {
  std::vector<double> x(dim());
  index_to_point(i, x);
  return x;
}

void GridSpec::index_to_point(std::uint64_t i, std::span<double> out) const {
  if (i >= size_) {
    std::ostringstream msg;
    msg << "grid index " << i << " out of range [0, " << size_ << ")";
    throw IndexError(msg.str());
  }
  for (std::size_t k = 0; k < dim(); ++k) {
    out[k] = coordinate(k, i % points_);
    i /= points_;
  }
}

std::uint64_t GridSpec::point_to_index(std::span<const double> x) const {
  if (x.size() != dim()) throw ArityError("point dimension does not match grid");
  std::uint64_t index = 0;
  std::uint64_t stride = 1;
  for (std::size_t k = 0; k < dim(); ++k) {
    const double lo = domain_.lower[k];
    const double hi = domain_.upper[k];
    if (!(x[k] >= lo - eps_[k] && x[k] <= hi + eps_[k])) {
      std::ostringstream msg;
      msg << "coordinate " << k << " = " << x[k] << " is more than one cell outside [" << lo
          << ", " << hi << "]";
      throw DomainError(msg.str());
    }
    // std::round breaks ties away from zero; the scaled offset is >= -1 here.
    const double scaled = std::round((std::clamp(x[k], lo, hi) - lo) / eps_[k]);
    const auto digit = static_cast<std::uint64_t>(
        std::clamp(scaled, 0.0, static_cast<double>(points_ - 1)));
    index += digit * stride;
    stride *= points_;
  }
  return index;
}

std::vector<std::uint64_t> GridSpec::digits(std::uint64_t i) const {
  if (i >= size_) throw IndexError("grid index out of range");
  std::vector<std::uint64_t> d(dim());
  for (auto& v : d) {
    v = i % points_;
    i /= points_;
  }
  return d;
}

std::uint64_t GridSpec::from_digits(std::span<const std::uint64_t> digits) const {
  if (digits.size() != dim()) throw IndexError("digit count does not match grid");
  std::uint64_t index = 0;
  std::uint64_t stride = 1;
  for (auto d : digits) {
    if (d >= points_) throw IndexError("digit out of range");
    index += d * stride;
    stride *= points_;
  }
  return index;
}

}  // namespace gopt
