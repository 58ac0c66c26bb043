#pragma once

// Adaptive proximal point algorithm for min f(x) over {0,1}^n through the
// exact penalty F(x; lambda) = f(x) + lambda * p(x) on the unit box.
//
// Each iteration backtracks tau = eta * alpha^s from s = 0 until the prox-gradient
// point x+ = Prox_{tau lambda p}(x - tau grad f(x)) gives sufficient decrease
//   F(x+; lambda) <= F(x; lambda) - (sigma / 2) ||x+ - x||^2,
// stops once x is binary and ||x - x+|| < epsilon, and multiplies lambda by pi
// every k0 iterations while lambda < theta.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "binopt/objectives.hpp"
#include "binopt/types.hpp"

namespace binopt {

struct AppaConfig {
  double eta = 1.0;           ///< initial step scale
  double alpha = 0.25;        ///< backtracking factor in (0, 1)
  double sigma = 1e-8;        ///< sufficient-decrease constant
  double lambda0 = 1.0;       ///< initial penalty
  double pi = 1.5;            ///< penalty growth factor > 1
  double theta = 10.0;        ///< penalty growth stops once lambda >= theta
  std::int64_t k0 = 100;      ///< penalty update period
  double epsilon = 1e-4;      ///< stopping tolerance in (0, 1)
  std::int64_t max_iters = 1'000'000;
  int max_backtracks = 60;
  std::optional<double> time_cap_secs;
  bool warm_start_backtracking = false;  ///< start the search at s_{k-1} - 1

  /// Throws ParameterError on the first violated invariant.
  void validate() const;
};

enum class Termination { StoppingRule, MaxIters, TimeCap };

std::string to_string(Termination t);

struct SolveReport {
  Vector x_final;
  double objective_value = 0.0;  ///< f(x_final)
  double penalty_value = 0.0;    ///< F(x_final; final lambda)
  std::int64_t iterations = 0;
  std::vector<int> backtrack_counts;
  std::vector<double> lambda_trace;
  std::vector<double> tau_trace;
  double stationarity_residual = 0.0;
  Termination terminated_by = Termination::MaxIters;
  double wall_time_secs = 0.0;
  std::vector<std::string> warnings;
};

struct StepResult {
  Vector x_next;
  double tau;
  int s;
};

/// Everything known about one accepted iteration; handed to solve observers.
struct IterationInfo {
  std::int64_t k;
  const Vector& x;
  const Vector& x_next;
  const Vector& gradient;
  double tau;
  int s;
  double lambda;
  double penalty_before;  ///< F(x; lambda)
  double penalty_after;   ///< F(x_next; lambda)
};

using IterationObserver = std::function<void(const IterationInfo&)>;

/// One backtracked prox-gradient step at fixed lambda. Throws LineSearchError
/// if no s <= cfg.max_backtracks gives sufficient decrease.
StepResult appa_step(const Vector& x, const Objective& f, double lambda, const AppaConfig& cfg);

/// pi * lambda when (k + 1) mod k0 == 0 and lambda < theta, else lambda.
double lambda_schedule(std::int64_t k, double lambda, const AppaConfig& cfg);

/// x binary and ||x - x_next||_2 < epsilon.
bool stopping_check(const Vector& x, const Vector& x_next, const AppaConfig& cfg);

/// Runs the algorithm from x0 (clamped into the box with a warning if needed).
SolveReport solve(const Objective& f, const Vector& x0, const AppaConfig& cfg,
                  const IterationObserver& observer = {});

}  // namespace binopt
