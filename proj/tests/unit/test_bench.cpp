#include <doctest.h>

#include <sstream>
#include <vector>

#include "gopt/bench.hpp"
#include "gopt/errors.hpp"

using namespace gopt;

namespace {

ExperimentConfig small(Algorithm a, std::uint64_t reps) {
  ExperimentConfig cfg;
  cfg.function = "griewank";
  cfg.n = 1;
  cfg.points = 512;
  cfg.algorithm = a;
  cfg.repetitions = reps;
  cfg.threads = 1;
  return cfg;
}

RunRecord with_effort(std::uint64_t total, std::optional<std::uint64_t> success_at) {
  RunRecord r;
  r.ledger.add_rotations(total);
  r.success = success_at.has_value();
  r.success_effort = success_at;
  return r;
}

}  // namespace

TEST_CASE("config validation names the field") {
  auto cfg = small(Algorithm::hybrid, 1);
  CHECK_NOTHROW(cfg.validate());
  cfg.repetitions = 0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("reps"), ConfigError);
  cfg = small(Algorithm::hybrid, 1);
  cfg.points = 1;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("points"), ConfigError);
  cfg = small(Algorithm::hybrid, 1);
  cfg.n = 9;
  cfg.function = "shekel";
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("n:"), ConfigError);
  cfg = small(Algorithm::hybrid, 1);
  cfg.function = "nope";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small(Algorithm::hybrid, 1);
  cfg.n = 4;
  cfg.points = 2048;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("points"), ConfigError);
}

TEST_CASE("one repetition gives one record") {
  CHECK(run_batch(small(Algorithm::hybrid, 1)).size() == 1);
}

TEST_CASE("batches are deterministic and independent of threads") {
  for (Algorithm a : {Algorithm::dh, Algorithm::bbw, Algorithm::hybrid}) {
    auto cfg = small(a, 64);
    const auto d = prepare_oracle(cfg);
    std::ostringstream first, second, threaded;
    write_runs_csv(first, run_batch(cfg, d));
    write_runs_csv(second, run_batch(cfg, d));
    cfg.threads = 4;
    write_runs_csv(threaded, run_batch(cfg, d));
    CHECK(first.str() == second.str());
    CHECK(first.str() == threaded.str());

    std::ostringstream t1, t2;
    const auto row1 = make_table_row(cfg, run_batch(cfg, d));
    const auto row2 = make_table_row(cfg, run_batch(cfg, d));
    write_table_csv(t1, std::vector<TableRow>{row1});
    write_table_csv(t2, std::vector<TableRow>{row2});
    CHECK(t1.str() == t2.str());
  }
}

TEST_CASE("performance curve") {
  const std::vector<RunRecord> recs = {with_effort(10, 3), with_effort(20, 10), with_effort(30, {}),
                                       with_effort(5, 0)};
  const std::vector<std::uint64_t> grid = {0, 2, 3, 9, 10, 100};
  const auto curve = performance_curve(recs, grid);
  CHECK(curve.samples == 4);
  CHECK(curve.success_prob == std::vector<double>{0.25, 0.25, 0.5, 0.5, 0.75, 0.75});
  CHECK(effort_for_success(recs, 0.5) == 3);
  CHECK(effort_for_success(recs, 0.75) == 10);
  CHECK_FALSE(effort_for_success(recs, 1.0).has_value());
  CHECK_THROWS(performance_curve(std::vector<RunRecord>{}, grid));
}

TEST_CASE("run-to-optimum curves reach one") {
  auto cfg = small(Algorithm::bbw, 200);
  cfg.mode = RunMode::run_to_optimum;
  const auto recs = run_batch(cfg);
  const auto grid = default_effort_grid(recs);
  CHECK(grid.size() <= 64);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  const auto curve = performance_curve(recs, grid);
  CHECK(curve.success_prob.back() == 1.0);
  CHECK(std::is_sorted(curve.success_prob.begin(), curve.success_prob.end()));
  CHECK(curve.success_prob.front() < 0.05);
}

TEST_CASE("summary statistics") {
  const std::vector<RunRecord> same = {with_effort(7, 1), with_effort(7, 1), with_effort(7, {})};
  const auto s = summarize(same);
  CHECK(s.mean_evals == 7.0);
  CHECK(s.stddev_evals == 0.0);
  CHECK(s.success_rate == doctest::Approx(2.0 / 3.0));
  const std::vector<RunRecord> spread = {with_effort(2, {}), with_effort(4, {})};
  CHECK(summarize(spread).stddev_evals == 1.0);
}

TEST_CASE("csv round trips") {
  const auto recs = run_batch(small(Algorithm::hybrid, 50));
  const auto curve = performance_curve(recs, default_effort_grid(recs));
  std::stringstream cs;
  write_curve_csv(cs, curve);
  CHECK(cs.str().rfind("effort,success_prob,samples\n", 0) == 0);
  const auto back = read_curve_csv(cs);
  CHECK(back.effort == curve.effort);
  CHECK(back.success_prob == curve.success_prob);
  CHECK(back.samples == curve.samples);

  const std::vector<TableRow> rows = {make_table_row(small(Algorithm::hybrid, 50), recs),
                                      make_table_row(small(Algorithm::dh, 50), recs)};
  CHECK(rows[1].routine == "-");
  std::stringstream ts;
  write_table_csv(ts, rows);
  CHECK(ts.str().rfind(
            "function,n,P,algorithm,routine,mean_evals,stddev_evals,success_rate,reps,seed\n", 0) ==
        0);
  CHECK(read_table_csv(ts) == rows);
}

TEST_CASE("shekel under run-to-optimum always succeeds") {
  auto cfg = small(Algorithm::hybrid, 100);
  cfg.function = "shekel";
  cfg.points = 2048;
  cfg.routine = Routine::nmead;
  cfg.mode = RunMode::run_to_optimum;
  CHECK(summarize(run_batch(cfg)).success_rate == 1.0);
}

TEST_CASE("2-var dejong hybrid terminated success") {
  auto cfg = small(Algorithm::hybrid, 100);
  cfg.function = "dejong";
  cfg.n = 2;
  cfg.points = 2048;
  CHECK(summarize(run_batch(cfg)).success_rate >= 0.9);
}
