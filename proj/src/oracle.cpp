#include "gopt/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <utility>

#include "gopt/errors.hpp"

namespace gopt {

namespace {

constexpr std::array<char, 5> kMagic = {'G', 'O', 'P', 'T', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (std::size_t b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

bool get_u64(std::istream& in, std::uint64_t& v) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
  v = 0;
  for (std::size_t b = 0; b < 8; ++b) v |= std::uint64_t{bytes[b]} << (8 * b);
  return true;
}

std::vector<std::uint64_t> sort_by_value(std::span<const double> values) {
  std::vector<std::pair<double, std::uint64_t>> keyed(values.size());
  for (std::uint64_t i = 0; i < values.size(); ++i) keyed[i] = {values[i], i};
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::uint64_t> perm(values.size());
  for (std::size_t j = 0; j < keyed.size(); ++j) perm[j] = keyed[j].second;
  return perm;
}

void check_capacity(std::uint64_t n) {
  if (n > kMaxOraclePoints) {
    std::ostringstream msg;
    msg << "grid of " << n << " points exceeds the oracle limit of " << kMaxOraclePoints
        << " points";
    throw CapacityError(msg.str());
  }
}

}  // namespace

DiscretizedObjective::DiscretizedObjective(std::optional<GridSpec> grid, std::vector<double> values,
                                           std::vector<std::uint64_t> sorted_perm)
    : grid_(std::move(grid)), values_(std::move(values)), sorted_perm_(std::move(sorted_perm)) {}

DiscretizedObjective DiscretizedObjective::build(const TestFunction& fn, const GridSpec& grid) {
  if (!fn.supports(grid.dim())) {
    throw ArityError(fn.name() + " does not support the grid dimension");
  }
  const BoxDomain box = fn.domain(grid.dim());
  for (std::size_t k = 0; k < grid.dim(); ++k) {
    if (grid.domain().lower[k] < box.lower[k] || grid.domain().upper[k] > box.upper[k]) {
      throw DomainError("grid extends outside the domain of " + fn.name());
    }
  }
  check_capacity(grid.size());
  std::vector<double> values(grid.size());
  std::vector<double> point(grid.dim());
  for (std::uint64_t i = 0; i < grid.size(); ++i) {
    grid.index_to_point(i, point);
    values[i] = fn.evaluate_unchecked(point);
  }
  auto perm = sort_by_value(values);
  return DiscretizedObjective(grid, std::move(values), std::move(perm));
}

DiscretizedObjective DiscretizedObjective::from_values(GridSpec grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw ConfigError("value list length does not match grid size");
  }
  check_capacity(grid.size());
  auto perm = sort_by_value(values);
  return DiscretizedObjective(std::move(grid), std::move(values), std::move(perm));
}

DiscretizedObjective DiscretizedObjective::from_list(std::vector<double> values) {
  if (values.empty()) throw ConfigError("value list must not be empty");
  check_capacity(values.size());
  auto perm = sort_by_value(values);
  return DiscretizedObjective(std::nullopt, std::move(values), std::move(perm));
}

const GridSpec& DiscretizedObjective::grid() const {
  if (!grid_) throw ConfigError("objective was built from a bare list and has no grid");
  return *grid_;
}

double DiscretizedObjective::value(std::uint64_t i) const {
  if (i >= values_.size()) throw IndexError("oracle index out of range");
  return values_[i];
}

double DiscretizedObjective::value_at(std::uint64_t i, EffortLedger& ledger) const {
  const double v = value(i);
  ledger.add_evaluations(1);
  return v;
}

std::uint64_t DiscretizedObjective::count_below(double y) const {
  auto it = std::partition_point(sorted_perm_.begin(), sorted_perm_.end(),
                                 [&](std::uint64_t idx) { return values_[idx] < y; });
  return static_cast<std::uint64_t>(it - sorted_perm_.begin());
}

std::uint64_t DiscretizedObjective::sample_below(double y, Rng& rng) const {
  const std::uint64_t m = count_below(y);
  if (m == 0) throw EmptySetError("no grid value lies strictly below the threshold");
  return sorted_perm_[rng.uniform_index(m)];
}

std::uint64_t DiscretizedObjective::sample_geq(double y, Rng& rng) const {
  const std::uint64_t m = count_below(y);
  const std::uint64_t rest = size() - m;
  if (rest == 0) throw EmptySetError("every grid value lies below the threshold");
  return sorted_perm_[m + rng.uniform_index(rest)];
}

void DiscretizedObjective::save(const std::filesystem::path& path) const {
  const GridSpec& g = grid();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open oracle cache for writing: " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, g.dim());
  put_u64(out, g.points_per_axis());
  for (double v : values_) put_u64(out, std::bit_cast<std::uint64_t>(v));
  for (std::uint64_t i : sorted_perm_) put_u64(out, i);
  if (!out) throw Error("failed writing oracle cache: " + path.string());
}

std::optional<DiscretizedObjective> DiscretizedObjective::load(const std::filesystem::path& path,
                                                               const GridSpec& grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, kMagic.size()> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) return std::nullopt;
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  if (!get_u64(in, n) || !get_u64(in, p)) return std::nullopt;
  if (n != grid.dim() || p != grid.points_per_axis()) return std::nullopt;
  check_capacity(grid.size());

  std::vector<double> values(grid.size());
  for (auto& v : values) {
    std::uint64_t bits = 0;
    if (!get_u64(in, bits)) return std::nullopt;
    v = std::bit_cast<double>(bits);
  }
  std::vector<std::uint64_t> perm(grid.size());
  for (auto& i : perm) {
    if (!get_u64(in, i) || i >= grid.size()) return std::nullopt;
  }
  return DiscretizedObjective(grid, std::move(values), std::move(perm));
}

DiscretizedObjective build_cached(const TestFunction& fn, const GridSpec& grid,
                                  const std::optional<std::filesystem::path>& cache_dir) {
  if (!cache_dir) return DiscretizedObjective::build(fn, grid);
  std::ostringstream name;
  name << fn.name() << "_n" << grid.dim() << "_P" << grid.points_per_axis() << ".gopt";
  const auto path = *cache_dir / name.str();
  if (auto cached = DiscretizedObjective::load(path, grid)) return std::move(*cached);
  auto built = DiscretizedObjective::build(fn, grid);
  std::error_code ec;
  std::filesystem::create_directories(*cache_dir, ec);
  built.save(path);
  return built;
}

}  // namespace gopt
