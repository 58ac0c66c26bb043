#include <doctest.h>

#include "binopt/appa_solver.hpp"
#include "binopt/cubic_penalty.hpp"
#include "binopt/errors.hpp"
#include "binopt/oracle.hpp"
#include "binopt/penalty_model.hpp"
#include "binopt/presets.hpp"
#include "helpers.hpp"

using namespace binopt;
using binopt::testing::random_symmetric;
using binopt::testing::ShiftedQuadratic;

TEST_CASE("config validation") {
  AppaConfig c;
  CHECK_NOTHROW(c.validate());
  for (auto mutate : std::initializer_list<void (*)(AppaConfig&)>{
           [](AppaConfig& x) { x.eta = 0; }, [](AppaConfig& x) { x.alpha = 1; },
           [](AppaConfig& x) { x.alpha = 0; }, [](AppaConfig& x) { x.sigma = 0; },
           [](AppaConfig& x) { x.pi = 1; }, [](AppaConfig& x) { x.k0 = 0; },
           [](AppaConfig& x) { x.epsilon = 1; }, [](AppaConfig& x) { x.lambda0 = 0; },
           [](AppaConfig& x) { x.theta = 0; }, [](AppaConfig& x) { x.max_iters = 0; },
           [](AppaConfig& x) { x.time_cap_secs = 0.0; }}) {
    AppaConfig bad;
    mutate(bad);
    CHECK_THROWS_AS(bad.validate(), ParameterError);
  }
}

TEST_CASE("lambda schedule") {
  AppaConfig c;
  c.k0 = 100;
  c.pi = 1.5;
  c.theta = 10;
  CHECK(lambda_schedule(99, 0.25, c) == doctest::Approx(0.375));
  CHECK(lambda_schedule(50, 0.25, c) == 0.25);
  CHECK(lambda_schedule(99, 11.0, c) == 11.0);
}

TEST_CASE("stopping rule") {
  AppaConfig c;
  CHECK(stopping_check((Vector(2) << 0, 1).finished(), (Vector(2) << 0, 1).finished(), c));
  CHECK_FALSE(stopping_check((Vector(2) << 0.5, 1).finished(), (Vector(2) << 0.5, 1).finished(), c));
  c.epsilon = 0.5;
  CHECK_FALSE(stopping_check((Vector(2) << 0, 1).finished(), (Vector(2) << 1, 1).finished(), c));
}

TEST_CASE("a P-stationary binary point is a fixed point of the step") {
  ShiftedQuadratic f((Vector(2) << 2.0, -1.0).finished());
  const Vector x = (Vector(2) << 1, 0).finished();
  AppaConfig c;
  const StepResult step = appa_step(x, f, 1.0, c);
  CHECK(step.s == 0);
  CHECK(step.x_next == x);
}

TEST_CASE("one step moves toward the clamped target") {
  ShiftedQuadratic f((Vector(2) << 2.0, -1.0).finished());
  const Vector x = Vector::Constant(2, 0.5);
  AppaConfig c;
  const StepResult step = appa_step(x, f, 1e-6, c);
  CHECK(step.x_next[0] > 0.5);
  CHECK(step.x_next[1] < 0.5);
  CHECK(step.x_next == (Vector(2) << 1, 0).finished());
}

TEST_CASE("accepted steps satisfy sufficient decrease") {
  Rng rng(21, "decrease");
  for (int rep = 0; rep < 20; ++rep) {
    QuboObjective f(Matrix(random_symmetric(8, rng, 3.0)));
    AppaConfig c;
    c.lambda0 = 0.05;
    Vector x = Vector::Constant(8, 0.5);
    for (int k = 0; k < 10; ++k) {
      const StepResult step = appa_step(x, f, c.lambda0, c);
      const double before = penalty_value(f, x, c.lambda0);
      const double after = penalty_value(f, step.x_next, c.lambda0);
      CHECK(after <= before - 0.5 * c.sigma * (step.x_next - x).squaredNorm());
      x = step.x_next;
    }
  }
}

TEST_CASE("two-variable QUBO reaches the brute-force minimum from the box centre") {
  DenseMatrix q(2, 2);
  q << -2, 1, 1, -2;
  QuboObjective f{Matrix(q)};
  CHECK(brute_force_min(f).f_opt == doctest::Approx(-1.0));
  const Preset p = qubo_preset(f.q());
  const SolveReport r = solve(f, p.x0, p.config);
  CHECK(r.terminated_by == Termination::StoppingRule);
  CHECK(is_binary(r.x_final));
  CHECK(r.objective_value <= -1.0 + 1e-12);
}

TEST_CASE("x0 = 0 is a fixed point for any pure quadratic") {
  DenseMatrix q(2, 2);
  q << -2, 1, 1, -2;
  QuboObjective f{Matrix(q)};
  AppaConfig c;
  const SolveReport r = solve(f, Vector::Zero(2), c);
  CHECK(r.iterations == 1);
  CHECK(r.x_final == Vector::Zero(2));
}

TEST_CASE("binary P-stationary start terminates in place") {
  ShiftedQuadratic f((Vector(3) << 2.0, -1.0, 3.0).finished());
  const Vector x0 = (Vector(3) << 1, 0, 1).finished();
  const SolveReport r = solve(f, x0, AppaConfig{});
  CHECK(r.terminated_by == Termination::StoppingRule);
  CHECK(r.x_final == x0);
  CHECK(r.stationarity_residual < 1e-4);
}

TEST_CASE("start outside the box is clamped with a warning") {
  ShiftedQuadratic f((Vector(2) << 2.0, -1.0).finished());
  const SolveReport r = solve(f, (Vector(2) << 3.0, -2.0).finished(), AppaConfig{});
  CHECK(!r.warnings.empty());
  CHECK(r.x_final == (Vector(2) << 1, 0).finished());
}

TEST_CASE("observer sees every iteration and the run is reproducible") {
  Rng rng(3, "observer");
  QuboObjective f(Matrix(random_symmetric(10, rng, 5.0)));
  const Preset p = qubo_preset(f.q());
  std::int64_t seen = 0;
  const SolveReport a = solve(f, p.x0, p.config, [&](const IterationInfo& it) {
    CHECK(it.k == seen);
    CHECK(in_box(it.x_next));
    ++seen;
  });
  CHECK(seen == a.iterations);
  CHECK(a.lambda_trace.size() == static_cast<std::size_t>(a.iterations));
  const SolveReport b = solve(f, p.x0, p.config);
  CHECK(a.x_final == b.x_final);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("iteration cap and time cap") {
  ShiftedQuadratic f(Vector::Constant(4, 0.5));
  AppaConfig c;
  c.lambda0 = 1e-6;
  c.theta = 1e-6;
  c.max_iters = 5;
  SolveReport r = solve(f, Vector::Constant(4, 0.25), c);
  CHECK(r.terminated_by == Termination::MaxIters);
  CHECK(r.iterations == 5);
  c.max_iters = 1'000'000;
  c.time_cap_secs = 0.05;
  r = solve(f, Vector::Constant(4, 0.25), c);
  CHECK(r.terminated_by == Termination::TimeCap);
  CHECK(to_string(Termination::StoppingRule) == "stopping_rule");
}
