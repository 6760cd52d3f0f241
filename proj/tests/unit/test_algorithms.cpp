#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gopt/algorithms.hpp"
#include "gopt/errors.hpp"
#include "gopt/oracle.hpp"
#include "gopt/rng.hpp"

using namespace gopt;

namespace {

DiscretizedObjective from_list(std::vector<double> values) {
  return DiscretizedObjective::from_list(std::move(values));
}

void check_record(const RunRecord& rec, const DiscretizedObjective& d) {
  CHECK(rec.found_value == d.value(rec.found_index));
  REQUIRE(!rec.trace.empty());
  for (std::size_t i = 1; i < rec.trace.size(); ++i) {
    CHECK(rec.trace[i].effort > rec.trace[i - 1].effort);
    CHECK(rec.trace[i].best_value < rec.trace[i - 1].best_value);
  }
  CHECK(rec.trace.back().best_value == rec.found_value);
  CHECK(rec.trace.back().effort <= rec.ledger.effort());
  CHECK(rec.success == (std::abs(rec.found_value - d.min_value()) <= kSuccessTolerance));
  CHECK(rec.success_effort.has_value() == rec.success);
}

}  // namespace

TEST_CASE("names round trip") {
  for (Algorithm a : {Algorithm::dh, Algorithm::bbw, Algorithm::hybrid}) {
    CHECK(parse_algorithm(algorithm_name(a)) == a);
  }
  CHECK(parse_mode("run-to-optimum") == RunMode::run_to_optimum);
  CHECK(parse_mode(mode_name(RunMode::terminated)) == RunMode::terminated);
  CHECK_THROWS_AS(parse_algorithm("grover"), ConfigError);
  CHECK_THROWS_AS(parse_mode("forever"), ConfigError);
}

TEST_CASE("termination condition") {
  EffortLedger l;
  CHECK_FALSE(termination_met(l, 2048, 1));
  l.add_rotations(112);
  CHECK(termination_met(l, 2048, 1));
  EffortLedger k;
  k.add_rotations(100);
  k.add_evaluations(2);
  CHECK_FALSE(termination_met(k, 2048, 1));
  k.add_evaluations(1);  // 100 + 4.11 * 3 = 112.3
  CHECK(termination_met(k, 2048, 1));
  CHECK(2.46 * std::sqrt(2048.0) == doctest::Approx(111.33).epsilon(1e-4));
}

TEST_CASE("default budgets") {
  CHECK(dh_rotation_budget(1024) == static_cast<std::uint64_t>(22.5 * 32 + 1.4 * 100));
  CHECK(bbw_rotation_budget(1024) == 78);
}

TEST_CASE("singleton list") {
  const auto d = from_list({3.5});
  Rng rng(1);
  EffortLedger ledger;
  const auto rec = dh_minimize(d, rng, ledger);
  CHECK(rec.success);
  CHECK(rec.found_index == 0);
  CHECK(ledger.n1() == 0);
}

TEST_CASE("gas on a monotone list keeps a monotone trace") {
  std::vector<double> values(512);
  std::iota(values.begin(), values.end(), 0.0);
  const auto d = from_list(values);
  for (Schedule s : {Schedule::dh, Schedule::bbw}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng = Rng::for_stream(9, seed);
      EffortLedger ledger;
      const auto rec = gas_minimize(d, s, rng, ledger);
      check_record(rec, d);
      const auto budget = s == Schedule::dh ? dh_rotation_budget(512) : bbw_rotation_budget(512);
      // The last round may start just under the budget and use up to sqrt(N) rotations.
      CHECK(ledger.n1() <= budget + 23);
      CHECK(ledger.n2() == 1);
    }
  }
}

TEST_CASE("initial draw at the minimum") {
  const auto d = from_list({0.0, 0.0, 0.0, 0.0});
  Rng rng(5);
  EffortLedger ledger;
  const auto rec = gas_minimize(d, Schedule::bbw, rng, ledger);
  CHECK(rec.success);
  CHECK(rec.trace.size() == 1);
}

TEST_CASE("rotation budget override") {
  std::vector<double> values(4096);
  std::iota(values.begin(), values.end(), 0.0);
  const auto d = from_list(values);
  Rng rng(6);
  EffortLedger ledger;
  RunOptions opts;
  opts.rotation_budget = 10;
  gas_minimize(d, Schedule::dh, rng, ledger, opts);
  CHECK(ledger.n1() <= 10 + 64);
}

TEST_CASE("run-to-optimum reaches the minimum") {
  Rng shuffle(3);
  std::vector<double> values(1024);
  std::iota(values.begin(), values.end(), 0.0);
  std::shuffle(values.begin(), values.end(), shuffle.engine());
  const auto d = from_list(values);
  RunOptions opts;
  opts.mode = RunMode::run_to_optimum;
  for (Schedule s : {Schedule::dh, Schedule::bbw}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng = Rng::for_stream(1, seed);
      EffortLedger ledger;
      const auto rec = gas_minimize(d, s, rng, ledger, opts);
      CHECK(rec.success);
      CHECK(rec.success_effort == rec.trace.back().effort);
    }
  }
}

TEST_CASE("hybrid on a single basin") {
  const auto& fn = find_function("dejong");
  const GridSpec g(fn.domain(1), 2048);
  const auto d = DiscretizedObjective::build(fn, g);
  const auto cfg = LocalOptimizerConfig::for_grid(Routine::qmodel, g);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng = Rng::for_stream(2, seed);
    EffortLedger ledger;
    const auto rec = hybrid_minimize(d, fn, cfg, rng, ledger);
    CHECK(rec.success);
    CHECK(rec.trace.size() == 1);
    CHECK(termination_met(ledger, d.size(), 1));
    check_record(rec, d);
  }
}

TEST_CASE("hybrid invariants on multimodal functions") {
  for (const char* name : {"griewank", "rastrigin", "ackley", "schwefel"}) {
    const auto& fn = find_function(name);
    const GridSpec g(fn.domain(2), 64);
    const auto d = DiscretizedObjective::build(fn, g);
    for (Routine routine : {Routine::nmead, Routine::lbfgs, Routine::qmodel}) {
      const auto cfg = LocalOptimizerConfig::for_grid(routine, g);
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng = Rng::for_stream(3, seed);
        EffortLedger ledger;
        const auto rec = hybrid_minimize(d, fn, cfg, rng, ledger);
        CAPTURE(name);
        check_record(rec, d);
      }
    }
  }
}

TEST_CASE("hybrid with run-to-optimum always finishes") {
  const auto& fn = find_function("rastrigin");
  const GridSpec g(fn.domain(2), 256);  // N = 2^16
  const auto d = DiscretizedObjective::build(fn, g);
  const auto cfg = LocalOptimizerConfig::for_grid(Routine::qmodel, g);
  RunOptions opts;
  opts.mode = RunMode::run_to_optimum;
  opts.max_rotations = 10000000;
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng = Rng::for_stream(4, seed);
    EffortLedger ledger;
    const auto rec = hybrid_minimize(d, fn, cfg, rng, ledger, opts);
    if (!rec.success || ledger.n1() > opts.max_rotations) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("grid polish option is honoured") {
  const auto& fn = find_function("griewank");
  const GridSpec g(fn.domain(1), 2048);
  const auto d = DiscretizedObjective::build(fn, g);
  const auto cfg = LocalOptimizerConfig::for_grid(Routine::qmodel, g);
  std::uint64_t with = 0, without = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng a = Rng::for_stream(5, seed);
    Rng b = Rng::for_stream(5, seed);
    EffortLedger la, lb;
    check_record(hybrid_minimize(d, fn, cfg, a, la, {}, {.grid_polish = true}), d);
    check_record(hybrid_minimize(d, fn, cfg, b, lb, {}, {.grid_polish = false}), d);
    with += la.n2();
    without += lb.n2();
  }
  CHECK(with > without);
}

TEST_CASE("seed determinism") {
  const auto& fn = find_function("ackley");
  const GridSpec g(fn.domain(2), 128);
  const auto d = DiscretizedObjective::build(fn, g);
  const auto cfg = LocalOptimizerConfig::for_grid(Routine::nmead, g);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng a = Rng::for_stream(77, seed);
    Rng b = Rng::for_stream(77, seed);
    EffortLedger la, lb;
    const auto ra = hybrid_minimize(d, fn, cfg, a, la);
    const auto rb = hybrid_minimize(d, fn, cfg, b, lb);
    CHECK(ra.found_index == rb.found_index);
    CHECK(la == lb);
    CHECK(ra.trace.size() == rb.trace.size());
  }
}
