#include "binopt/oracle.hpp"

#include <cmath>
#include <limits>

#include "binopt/errors.hpp"

namespace binopt {

namespace {

// Written out separately from g_value so the oracle shares no code with the
// closed-form prox it is checking.
double cubic_penalty_direct(double w) {
  return w <= 0.5 ? w * (3.0 - 3.0 * w + w * w) : 1.0 - w * w * w;
}

Index grid_points(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 1e-4))
    throw ParameterError("grid step must lie in (0, 1e-4]");
  return static_cast<Index>(std::llround(1.0 / grid_step)) + 1;
}

double grid_node(Index k, Index count) {
  return static_cast<double>(k) / static_cast<double>(count - 1);
}

}  // namespace

BruteForceResult brute_force_min(const Objective& f) {
  const Index n = f.dim();
  if (n > kBruteForceMaxDim)
    throw CapabilityError("brute force enumeration is limited to n <= 24");
  BruteForceResult best{Vector::Zero(n), std::numeric_limits<double>::infinity()};
  Vector x(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (Index i = 0; i < n; ++i) x[i] = static_cast<double>((mask >> (n - 1 - i)) & 1U);
    const double v = f.value(x);
    if (v < best.f_opt) {
      best.f_opt = v;
      best.x_opt = x;
    }
  }
  return best;
}

GridMinimum grid_prox_minimum(double z, double tau, double grid_step) {
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  const Index count = grid_points(grid_step);
  const double inv = 0.5 / tau;
  GridMinimum best{std::numeric_limits<double>::infinity(), 0.0};
  for (Index k = 0; k < count; ++k) {
    const double w = grid_node(k, count);
    const double d = w - z;
    const double v = cubic_penalty_direct(w) + inv * d * d;
    if (v < best.value) best = {v, w};
  }
  return best;
}

std::vector<double> grid_prox_oracle(double z, double tau, double grid_step, double value_tol) {
  const GridMinimum best = grid_prox_minimum(z, tau, grid_step);
  const Index count = grid_points(grid_step);
  const double inv = 0.5 / tau;
  std::vector<double> out;
  for (Index k = 0; k < count; ++k) {
    const double w = grid_node(k, count);
    const double d = w - z;
    if (cubic_penalty_direct(w) + inv * d * d <= best.value + value_tol) out.push_back(w);
  }
  return out;
}

Vector finite_difference_gradient(const Objective& f, const Vector& x, double h) {
  Vector g(x.size());
  Vector probe = x;
  for (Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f.value(probe);
    probe[i] = x[i] - h;
    const double down = f.value(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

}  // namespace binopt
