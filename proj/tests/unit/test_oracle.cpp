#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <vector>

#include "gopt/errors.hpp"
#include "gopt/oracle.hpp"
#include "gopt/testbed.hpp"

using namespace gopt;

namespace {

DiscretizedObjective tiny_dejong() {
  return DiscretizedObjective::build(find_function("dejong"),
                                     GridSpec(BoxDomain::cube(1, -1.0, 1.0), 3));
}

}  // namespace

TEST_CASE("dejong P=3 hand case") {
  const auto d = tiny_dejong();
  CHECK(std::vector<double>(d.values().begin(), d.values().end()) ==
        std::vector<double>{1.0, 0.0, 1.0});
  CHECK(std::vector<std::uint64_t>(d.sorted_perm().begin(), d.sorted_perm().end()) ==
        std::vector<std::uint64_t>{1, 0, 2});
  CHECK(d.count_below(0.5) == 1);
  CHECK(d.count_below(d.min_value()) == 0);
  CHECK(d.count_below(std::numeric_limits<double>::infinity()) == 3);
  Rng rng(1);
  for (int t = 0; t < 100; ++t) CHECK(d.sample_below(0.5, rng) == 1);
  CHECK_THROWS_AS(d.sample_geq(2.0, rng), EmptySetError);
  CHECK_THROWS_AS(d.sample_below(0.0, rng), EmptySetError);

  EffortLedger ledger;
  CHECK(d.value_at(1, ledger) == 0.0);
  d.value_at(0, ledger);
  d.value_at(2, ledger);
  CHECK(ledger.n2() == 3);
  CHECK(d.value_at(0, ledger) == d.value(0));
  CHECK_THROWS_AS(d.value_at(3, ledger), IndexError);
}

TEST_CASE("build checks the grid against the function") {
  CHECK_THROWS_AS(DiscretizedObjective::build(find_function("dejong"),
                                              GridSpec(BoxDomain::cube(1, -6.0, 1.0), 3)),
                  DomainError);
  CHECK_THROWS_AS(DiscretizedObjective::build(find_function("shekel"),
                                              GridSpec(BoxDomain::cube(9, -1.0, 1.0), 2)),
                  ArityError);
  const auto& dejong = find_function("dejong");
  const auto d = DiscretizedObjective::build(dejong, GridSpec(dejong.domain(1), 3));
  CHECK(d.values()[1] == 0.0);
  CHECK(d.sorted_perm()[0] == 1);
}

TEST_CASE("griewank P=2048: first sorted index is nearest the origin") {
  const auto& fn = find_function("griewank");
  const GridSpec g(fn.domain(1), 2048);
  const auto d = DiscretizedObjective::build(fn, g);
  const auto first = d.sorted_perm()[0];
  CHECK((first == 1023 || first == 1024));
  CHECK(std::abs(g.index_to_point(first)[0]) <= 0.5 * g.eps()[0]);
  CHECK(d.min_value() == reference_global_min(fn, g).second);
}

TEST_CASE("sorted_perm is an ordered permutation on every function") {
  for (const auto& fn : all_functions()) {
    const GridSpec g(fn.domain(fn.min_arity() > 2 ? fn.min_arity() : 2), 64);
    const auto d = DiscretizedObjective::build(fn, g);
    std::vector<char> seen(d.size(), 0);
    bool ordered = true;
    for (std::size_t j = 0; j < d.size(); ++j) {
      seen[d.sorted_perm()[j]] = 1;
      if (j + 1 < d.size()) {
        const auto a = d.sorted_perm()[j];
        const auto b = d.sorted_perm()[j + 1];
        ordered &= d.value(a) < d.value(b) || (d.value(a) == d.value(b) && a < b);
      }
    }
    CAPTURE(fn.name());
    CHECK(ordered);
    CHECK(std::accumulate(seen.begin(), seen.end(), std::size_t{0}) == d.size());
  }
}

TEST_CASE("count_below matches a linear scan") {
  Rng rng(3);
  for (const auto& fn : all_functions()) {
    for (std::size_t n = 1; n <= 2; ++n) {
      if (!fn.supports(n)) continue;
      const GridSpec g(fn.domain(n), n == 1 ? 2048 : 256);  // N <= 2^16
      const auto d = DiscretizedObjective::build(fn, g);
      const double lo = d.min_value();
      const double hi = d.value(d.sorted_perm().back());
      std::uint64_t mismatches = 0;
      std::uint64_t previous = 0;
      bool monotone = true;
      std::vector<double> ys(1000);
      for (auto& y : ys) {
        // Mix thresholds at tabulated values with thresholds between them.
        y = rng.bernoulli(0.5) ? d.value(rng.uniform_index(d.size())) : rng.uniform(lo - 1, hi + 1);
      }
      std::sort(ys.begin(), ys.end());
      for (double y : ys) {
        std::uint64_t naive = 0;
        for (double v : d.values()) naive += v < y ? 1 : 0;
        const auto fast = d.count_below(y);
        if (fast != naive) ++mismatches;
        monotone &= fast >= previous;
        previous = fast;
      }
      CAPTURE(fn.name());
      CAPTURE(n);
      CHECK(mismatches == 0);
      CHECK(monotone);
    }
  }
}

TEST_CASE("samples are uniform over the marked set and its complement") {
  std::vector<double> values(64);
  std::iota(values.begin(), values.end(), 0.0);
  const auto d = DiscretizedObjective::from_values(GridSpec(BoxDomain::cube(1, 0.0, 1.0), 64),
                                                   values);
  Rng rng(5);
  const int draws = 100000;
  std::vector<int> counts(64, 0);
  for (int t = 0; t < draws; ++t) ++counts[d.sample_geq(0.0, rng)];
  double chi2 = 0.0;
  const double expected = static_cast<double>(draws) / 64.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 63 degrees of freedom: the 0.999 quantile is 103.4.
  CHECK(chi2 < 103.4);

  for (int t = 0; t < 2000; ++t) {
    CHECK(d.sample_below(20.0, rng) < 20);
    CHECK(d.sample_geq(20.0, rng) >= 20);
  }
}

TEST_CASE("binary cache round trip") {
  const auto& fn = find_function("rastrigin");
  const GridSpec g(fn.domain(2), 33);
  const auto dir = std::filesystem::temp_directory_path() / "gopt_unit_cache";
  std::filesystem::remove_all(dir);
  const auto built = build_cached(fn, g, dir);
  const auto file = dir / "rastrigin_n2_P33.gopt";
  REQUIRE(std::filesystem::exists(file));
  CHECK(std::filesystem::file_size(file) == 5 + 16 + 33 * 33 * 16);
  {
    std::ifstream in(file, std::ios::binary);
    char magic[5];
    in.read(magic, 5);
    CHECK(std::string(magic, 5) == "GOPT1");
  }
  const auto loaded = DiscretizedObjective::load(file, g);
  REQUIRE(loaded.has_value());
  CHECK(std::equal(loaded->values().begin(), loaded->values().end(), built.values().begin()));
  CHECK(std::equal(loaded->sorted_perm().begin(), loaded->sorted_perm().end(),
                   built.sorted_perm().begin()));
  CHECK_FALSE(DiscretizedObjective::load(file, GridSpec(fn.domain(2), 34)).has_value());
  CHECK_FALSE(DiscretizedObjective::load(dir / "missing.gopt", g).has_value());
  std::filesystem::remove_all(dir);
}

TEST_CASE("bare lists") {
  const auto d = DiscretizedObjective::from_list({2.0, -1.0, 2.0});
  CHECK_FALSE(d.has_grid());
  CHECK_THROWS_AS(d.grid(), ConfigError);
  CHECK(d.sorted_perm()[0] == 1);
  CHECK(DiscretizedObjective::from_list({4.0}).size() == 1);
  CHECK_THROWS_AS(DiscretizedObjective::from_list({}), ConfigError);
  CHECK_THROWS_AS(d.save(std::filesystem::temp_directory_path() / "gopt_no_grid.gopt"),
                  ConfigError);
}

TEST_CASE("ledger counters") {
  EffortLedger l;
  CHECK(l.effort() == 0);
  l.add_rotations(5);
  l.add_evaluations(2);
  l.add_measurement();
  CHECK(l.n1() == 5);
  CHECK(l.n2() == 2);
  CHECK(l.measurements() == 1);
  CHECK(l.effort() == 8);
}
