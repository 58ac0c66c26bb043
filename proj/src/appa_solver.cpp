#include "binopt/appa_solver.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "binopt/cubic_penalty.hpp"
#include "binopt/errors.hpp"
#include "binopt/penalty_model.hpp"

namespace binopt {

namespace {

struct Backtrack {
  double tau;
  int s;
  double penalty_after;
};

// Finds the smallest admissible s >= s_start. `fx` and `grad` belong to x.
Backtrack backtrack(const Vector& x, const Vector& grad, double penalty_x, const Objective& f,
                    double lambda, const AppaConfig& cfg, int s_start, std::int64_t k,
                    Vector& x_next) {
  Vector z(x.size());
  double tau = cfg.eta * std::pow(cfg.alpha, s_start);
  for (int s = s_start; s <= cfg.max_backtracks; ++s, tau *= cfg.alpha) {
    z.noalias() = x - tau * grad;
    prox_vector(z, tau * lambda, x_next);
    const double step_sq = (x_next - x).squaredNorm();
    if (step_sq == 0.0) return {tau, s, penalty_x};
    const double penalty_next = f.value(x_next) + lambda * p_value(x_next);
    if (penalty_next <= penalty_x - 0.5 * cfg.sigma * step_sq) return {tau, s, penalty_next};
  }
  throw LineSearchError(
      fmt::format("no sufficient decrease within {} backtracks at iteration {} (last tau {:.3e})",
                  cfg.max_backtracks, k, tau / cfg.alpha),
      tau / cfg.alpha, static_cast<std::size_t>(k));
}

}  // namespace

void AppaConfig::validate() const {
  if (!(eta > 0.0)) throw ParameterError("eta must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  if (!(lambda0 > 0.0)) throw ParameterError("lambda0 must be positive");
  if (!(pi > 1.0)) throw ParameterError("pi must exceed 1");
  if (!(theta > 0.0)) throw ParameterError("theta must be positive");
  if (k0 <= 0) throw ParameterError("k0 must be a positive integer");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (max_iters <= 0) throw ParameterError("max_iters must be positive");
  if (max_backtracks <= 0) throw ParameterError("max_backtracks must be positive");
  if (time_cap_secs && !(*time_cap_secs > 0.0)) throw ParameterError("time cap must be positive");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::StoppingRule: return "stopping_rule";
    case Termination::MaxIters: return "max_iters";
    case Termination::TimeCap: return "time_cap";
  }
  return "unknown";
}

StepResult appa_step(const Vector& x, const Objective& f, double lambda, const AppaConfig& cfg) {
  cfg.validate();
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
  if (!in_box(x)) throw DomainError("iterate lies outside the unit box");
  Vector grad;
  const double fx = f.value_and_gradient(x, grad);
  const double penalty_x = fx + lambda * p_value(x);
  StepResult out;
  const Backtrack bt = backtrack(x, grad, penalty_x, f, lambda, cfg, 0, 0, out.x_next);
  out.tau = bt.tau;
  out.s = bt.s;
  return out;
}

double lambda_schedule(std::int64_t k, double lambda, const AppaConfig& cfg) {
  if ((k + 1) % cfg.k0 == 0 && lambda < cfg.theta) return cfg.pi * lambda;
  return lambda;
}

bool stopping_check(const Vector& x, const Vector& x_next, const AppaConfig& cfg) {
  return is_binary(x) && (x - x_next).norm() < cfg.epsilon;
}

SolveReport solve(const Objective& f, const Vector& x0, const AppaConfig& cfg,
                  const IterationObserver& observer) {
  cfg.validate();
  if (x0.size() != f.dim()) throw ParameterError("initial point has the wrong dimension");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  SolveReport report;
  Vector x = x0.cwiseMax(0.0).cwiseMin(1.0);
  if (x != x0) report.warnings.emplace_back("initial point clamped into the unit box");

  Vector grad, x_next;
  double lambda = cfg.lambda0;
  double tau = cfg.eta;
  int s_prev = 0;
  report.terminated_by = Termination::MaxIters;

  for (std::int64_t k = 0;; ++k) {
    if (k >= cfg.max_iters) break;
    if (cfg.time_cap_secs && elapsed() >= *cfg.time_cap_secs) {
      report.terminated_by = Termination::TimeCap;
      break;
    }
    const double fx = f.value_and_gradient(x, grad);
    const double penalty_x = fx + lambda * p_value(x);
    const int s_start = cfg.warm_start_backtracking ? std::max(s_prev - 1, 0) : 0;
    const Backtrack bt = backtrack(x, grad, penalty_x, f, lambda, cfg, s_start, k, x_next);
    tau = bt.tau;
    s_prev = bt.s;
    report.iterations = k + 1;
    report.backtrack_counts.push_back(bt.s);
    report.lambda_trace.push_back(lambda);
    report.tau_trace.push_back(tau);
    if (observer)
      observer(IterationInfo{k, x, x_next, grad, tau, bt.s, lambda, penalty_x, bt.penalty_after});

    if (stopping_check(x, x_next, cfg)) {
      report.terminated_by = Termination::StoppingRule;
      break;
    }
    lambda = lambda_schedule(k, lambda, cfg);
    x.swap(x_next);
  }

  report.objective_value = f.value_and_gradient(x, grad);
  report.penalty_value = report.objective_value + lambda * p_value(x);
  report.stationarity_residual = stationarity_check(x, grad, tau, lambda).residual;
  report.x_final = std::move(x);
  report.wall_time_secs = elapsed();
  return report;
}

}  // namespace binopt
