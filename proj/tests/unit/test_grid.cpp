#include <doctest.h>

#include <cmath>
#include <vector>

#include "gopt/errors.hpp"
#include "gopt/grid.hpp"
#include "gopt/rng.hpp"
#include "gopt/testbed.hpp"

using namespace gopt;

TEST_CASE("index_to_point") {
  const GridSpec g(BoxDomain::cube(2, 0.0, 3.0), 4);
  CHECK(g.size() == 16);
  CHECK(g.index_to_point(5) == std::vector<double>{1.0, 1.0});
  CHECK(g.index_to_point(0) == std::vector<double>{0.0, 0.0});
  CHECK(g.index_to_point(15) == std::vector<double>{3.0, 3.0});
  CHECK(g.index_to_point(1) == std::vector<double>{1.0, 0.0});  // axis 0 is least significant
  CHECK_THROWS_AS(g.index_to_point(16), IndexError);

  const GridSpec wide(BoxDomain::cube(1, -40.0, 40.0), 2048);
  CHECK(wide.index_to_point(2047)[0] == 40.0);
  CHECK(wide.index_to_point(0)[0] == -40.0);
  CHECK(wide.eps()[0] == doctest::Approx(80.0 / 2047.0));
}

TEST_CASE("point_to_index") {
  const GridSpec g(BoxDomain::cube(1, 0.0, 3.0), 4);
  CHECK(g.point_to_index(std::vector<double>{1.4}) == 1);
  CHECK(g.point_to_index(std::vector<double>{1.6}) == 2);
  CHECK(g.point_to_index(std::vector<double>{1.5}) == 2);  // half away from zero
  CHECK(g.point_to_index(std::vector<double>{3.0 + 1e-10}) == 3);
  CHECK(g.point_to_index(std::vector<double>{-0.4}) == 0);
  CHECK_THROWS_AS(g.point_to_index(std::vector<double>{5.0}), DomainError);
  CHECK_THROWS_AS(g.point_to_index(std::vector<double>{1.0, 1.0}), ArityError);
}

TEST_CASE("grid construction limits") {
  CHECK_THROWS_AS(GridSpec(BoxDomain::cube(1, 0.0, 1.0), 1), ConfigError);
  CHECK_THROWS_AS(GridSpec(BoxDomain::cube(5, 0.0, 1.0), std::uint64_t{1} << 16), CapacityError);
}

TEST_CASE("round trip over benchmark grids") {
  Rng rng(11);
  const std::pair<std::size_t, std::uint64_t> grids[] = {{1, 2048}, {2, 256}, {2, 2048},
                                                         {3, 64},   {3, 256}};
  for (const auto& fn : all_functions()) {
    for (const auto& [n, P] : grids) {
      if (!fn.supports(n)) continue;
      const GridSpec g(fn.domain(n), P);
      std::uint64_t failures = 0;
      for (int t = 0; t < 100000; ++t) {
        const std::uint64_t i = rng.uniform_index(g.size());
        if (g.point_to_index(g.index_to_point(i)) != i) ++failures;
      }
      CAPTURE(fn.name());
      CAPTURE(n);
      CHECK(failures == 0);
    }
  }
}

TEST_CASE("snap is idempotent and lands on the nearest point") {
  Rng rng(12);
  const GridSpec g(BoxDomain({-1.0, 0.0, 2.0}, {1.0, 10.0, 3.0}), 17);
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> x = {rng.uniform(-1, 1), rng.uniform(0, 10), rng.uniform(2, 3)};
    const auto i = g.point_to_index(x);
    CHECK(g.point_to_index(g.index_to_point(i)) == i);
    const auto p = g.index_to_point(i);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(p[k] - x[k]) <= 0.5 * g.eps()[k] + 1e-12);
  }
}

TEST_CASE("digits and from_digits are inverse") {
  const GridSpec g(BoxDomain::cube(3, 0.0, 1.0), 5);
  for (std::uint64_t i = 0; i < g.size(); ++i) CHECK(g.from_digits(g.digits(i)) == i);
}
