#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "gopt/grid.hpp"
#include "gopt/rng.hpp"
#include "gopt/testbed.hpp"

namespace gopt {

// Effort counters of a single run. n1 counts Grover rotations (one oracle
// query each), n2 counts charged classical objective evaluations made by
// local searches and initial draws. Each measurement is followed by one
// membership check of the measured point; that check is paid for by the
// measurement counter, not by n2.
class EffortLedger {
 public:
  void add_rotations(std::uint64_t r) { n1_ += r; }
  void add_evaluations(std::uint64_t k) { n2_ += k; }
  void add_measurement() { ++measurements_; }

  std::uint64_t n1() const { return n1_; }
  std::uint64_t n2() const { return n2_; }
  std::uint64_t measurements() const { return measurements_; }

  // Oracle queries, classical evaluations and measured-point checks; the
  // x-axis of performance curves and the total reported in tables.
  std::uint64_t effort() const { return n1_ + n2_ + measurements_; }

  friend bool operator==(const EffortLedger&, const EffortLedger&) = default;

 private:
  std::uint64_t n1_ = 0;
  std::uint64_t n2_ = 0;
  std::uint64_t measurements_ = 0;
};

// Largest grid the oracle will materialize (values + permutation, 16 bytes per point).
inline constexpr std::uint64_t kMaxOraclePoints = std::uint64_t{1} << 27;

// The objective tabulated on every grid point, with indices sorted by
// (value, index). Building it is free: only algorithm-driven reads through
// value_at() are charged.
class DiscretizedObjective {
 public:
  static DiscretizedObjective build(const TestFunction& fn, const GridSpec& grid);
  // From raw values (e.g. a synthetic list); the permutation is computed here.
  static DiscretizedObjective from_values(GridSpec grid, std::vector<double> values);
  // A bare list of at least one value with no geometry; enough for the
  // pure Grover searches, which never look at coordinates.
  static DiscretizedObjective from_list(std::vector<double> values);

  bool has_grid() const { return grid_.has_value(); }
  // Throws ConfigError for bare lists.
  const GridSpec& grid() const;
  std::uint64_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<const std::uint64_t> sorted_perm() const { return sorted_perm_; }

  // Uncharged read.
  double value(std::uint64_t i) const;
  // Charged read: one classical evaluation on the ledger.
  double value_at(std::uint64_t i, EffortLedger& ledger) const;

  double min_value() const { return values_[sorted_perm_.front()]; }

  // |{i : values[i] < y}| by binary search over the sorted order.
  std::uint64_t count_below(double y) const;
  // Uniform draw from the marked set {values < y} / its complement.
  std::uint64_t sample_below(double y, Rng& rng) const;
  std::uint64_t sample_geq(double y, Rng& rng) const;

  // Binary cache: "GOPT1", n and P as u64, N doubles, N u64 indices, little-endian.
  void save(const std::filesystem::path& path) const;
  // Returns nullopt when the file is missing or does not match the grid.
  static std::optional<DiscretizedObjective> load(const std::filesystem::path& path,
                                                  const GridSpec& grid);

 private:
  DiscretizedObjective(std::optional<GridSpec> grid, std::vector<double> values,
                       std::vector<std::uint64_t> sorted_perm);

  std::optional<GridSpec> grid_;
  std::vector<double> values_;
  std::vector<std::uint64_t> sorted_perm_;
};

// Build through an on-disk cache directory keyed by (function, n, P).
DiscretizedObjective build_cached(const TestFunction& fn, const GridSpec& grid,
                                  const std::optional<std::filesystem::path>& cache_dir);

}  // namespace gopt
