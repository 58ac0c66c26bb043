#include <doctest.h>

#include <sstream>

#include "binopt/errors.hpp"
#include "binopt/runner.hpp"

using namespace binopt;

namespace {

RunSpec small_recovery() {
  RunSpec spec;
  spec.task = Task::Recovery;
  spec.gen.m = 40;
  spec.gen.n = 60;
  spec.gen.s = 6;
  spec.trials = 3;
  spec.seed = 4;
  return spec;
}

}  // namespace

TEST_CASE("task names") {
  for (Task t : {Task::Qubo, Task::Recovery, Task::Mimo, Task::OneBit})
    CHECK(parse_task(to_string(t)) == t);
  CHECK_THROWS_AS(parse_task("lasso"), ParameterError);
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(median({}), UndefinedError);
}

TEST_CASE("spec validation") {
  RunSpec spec = small_recovery();
  spec.trials = 0;
  CHECK_THROWS_AS(spec.validate(), ParameterError);
  spec = small_recovery();
  spec.beasley = "bqp100-1";
  CHECK_THROWS_AS(spec.validate(), ParameterError);
}

TEST_CASE("presets and overrides") {
  RunSpec spec = small_recovery();
  const AnyInstance inst = build_instance(spec, 1);
  spec.overrides.eta = 0.5;
  spec.overrides.k0 = 7;
  const Preset p = resolve_preset(spec, inst);
  CHECK(p.config.eta == 0.5);
  CHECK(p.config.k0 == 7);
  CHECK(p.config.pi == 1.5);
  spec.preset = "mimo";
  CHECK(resolve_preset(spec, inst).config.pi == 1.25);
  spec.preset = "qubo";
  CHECK_THROWS_AS(resolve_preset(spec, inst), ParameterError);
  spec.preset = "nope";
  CHECK_THROWS_AS(resolve_preset(spec, inst), ParameterError);
  spec.preset.clear();
  spec.overrides.alpha = 2.0;
  CHECK_THROWS_AS(resolve_preset(spec, inst), ParameterError);
}

TEST_CASE("solve report is deterministic and summarizes its records") {
  const RunSpec spec = small_recovery();
  const auto a = run_trials(spec);
  REQUIRE(a.size() == 3);
  std::ostringstream first, second;
  write_solve_report(first, a, spec);
  RunSpec threaded = spec;
  threaded.threads = 3;
  write_solve_report(second, run_trials(threaded), spec);
  CHECK(first.str() == second.str());

  std::vector<double> accs;
  for (const auto& r : a) accs.push_back(*r.metrics.acc);
  const Summary s = summarize(a);
  CHECK(*s.median_acc == median(accs));
  CHECK(s.trials == 3);

  std::istringstream lines(first.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 4);
  CHECK(first.str().find("\"time_secs\"") == std::string::npos);
}

TEST_CASE("metric choice per task") {
  RunSpec q;
  q.task = Task::Qubo;
  q.gen.n = 10;
  q.trials = 2;
  for (const auto& r : run_trials(q)) {
    REQUIRE(r.metrics.gap_percent.has_value());
    CHECK(*r.metrics.gap_percent >= 0.0);
    CHECK_FALSE(r.metrics.acc.has_value());
  }
  RunSpec o;
  o.task = Task::OneBit;
  o.gen.m = 30;
  o.gen.n = 10;
  o.gen.snr_db = 20;
  for (const auto& r : run_trials(o)) CHECK(r.metrics.ber.has_value());
  RunSpec m;
  m.task = Task::Mimo;
  m.gen.m = 8;
  m.gen.n = 4;
  m.gen.snr_db = 20;
  for (const auto& r : run_trials(m)) {
    CHECK(r.metrics.ber.has_value());
    CHECK(r.dim == 8);
  }
}

TEST_CASE("sweep") {
  RunSpec spec = small_recovery();
  spec.trials = 2;
  const SweepResult sweep = run_sweep(spec, "m", {30, 40});
  REQUIRE(sweep.records.size() == 2);
  std::ostringstream trials, summary;
  write_sweep_trials_csv(trials, sweep, spec);
  write_sweep_summary_csv(summary, sweep, spec);
  CHECK(trials.str().rfind("schema_version,task,axis,value,trial,", 0) == 0);
  CHECK(summary.str().find("\n1,recovery,m,30,2,") != std::string::npos);
  CHECK(summary.str().find("\n1,recovery,m,40,2,") != std::string::npos);

  CHECK_THROWS_AS(run_sweep(spec, "m", {}), ParameterError);
  CHECK_THROWS_AS(run_sweep(spec, "depth", {1}), ParameterError);
  CHECK_THROWS_AS(run_sweep(spec, "m", {2.5}), ParameterError);

  GeneratorParams g;
  apply_axis(g, "snr", 7.5);
  CHECK(g.snr_db == 7.5);
  apply_axis(g, "r", 0.3);
  CHECK(g.correlated);
}
