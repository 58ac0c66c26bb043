#pragma once

// Independent reference computations used to check the solver path:
// exhaustive binary minimization, grid-scan prox, finite differences.

#include <vector>

#include "binopt/objectives.hpp"
#include "binopt/types.hpp"

namespace binopt {

struct BruteForceResult {
  Vector x_opt;
  double f_opt;
};

inline constexpr Index kBruteForceMaxDim = 24;

/// Exact minimizer of f over {0,1}^n by enumeration, n <= 24. Among equal
/// values the lexicographically smallest vector wins (x_1 most significant).
/// Throws CapabilityError for larger n.
BruteForceResult brute_force_min(const Objective& f);

/// Grid points w = k * grid_step in [0,1] whose value g(w) + (w - z)^2 / (2 tau)
/// is within `value_tol` of the grid minimum. Requires grid_step <= 1e-4.
std::vector<double> grid_prox_oracle(double z, double tau, double grid_step,
                                     double value_tol = 1e-8);

/// Minimum over the grid of g(w) + (w - z)^2 / (2 tau), and its first argmin.
struct GridMinimum {
  double value;
  double argmin;
};
GridMinimum grid_prox_minimum(double z, double tau, double grid_step);

/// Central differences with step h, one coordinate at a time.
Vector finite_difference_gradient(const Objective& f, const Vector& x, double h = 1e-6);

}  // namespace binopt
