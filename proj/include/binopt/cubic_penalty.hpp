#pragma once

// Piecewise cubic binary penalty
//
//   g(x) = x^3 - 3x^2 + 3x   for x <= 1/2
//   g(x) = 1 - x^3           for x >  1/2
//
// g vanishes exactly at 0 and 1 on [0, 1], so p(x) = sum_i g(x_i) is an exact
// binarity measure over the unit box. The box-constrained proximal operator
// of tau * g has a closed form with two regimes split at tau = 1/6.

#include <array>
#include <cstddef>
#include <span>

#include "binopt/types.hpp"

namespace binopt {

/// Up to two reals; used for subgradient sets and prox minimizer sets.
class SmallSet {
 public:
  SmallSet() = default;
  explicit SmallSet(double a) : values_{a, 0.0}, size_(1) {}
  SmallSet(double a, double b) : values_{a, b}, size_(2) {}

  std::size_t size() const noexcept { return size_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return {values_.data(), size_}; }
  bool contains(double v) const noexcept {
    for (std::size_t i = 0; i < size_; ++i)
      if (values_[i] == v) return true;
    return false;
  }

 private:
  std::array<double, 2> values_{};
  std::size_t size_ = 0;
};

enum class ProxBranch { LargeTau, SmallTau };

/// Which closed-form regime applies to a given tau. tau == 1/6 is LargeTau.
struct ProxRegime {
  double tau;
  ProxBranch branch;

  static ProxRegime of(double tau);
};

/// Full minimizer set of w -> g(w) + (w - z)^2 / (2 tau) over [0, 1], plus
/// the deterministic pick (the smaller candidate when there are two).
struct ScalarProxResult {
  SmallSet candidates;
  double selected;
};

double g_value(double x);

/// Limiting subdifferential of g: a singleton off x = 1/2, {-3/4, 3/4} at 1/2.
SmallSet g_subdiff(double x);

/// p(x) = sum_i g(x_i).
double p_value(const Vector& x);

/// Closed-form Prox^{[0,1]}_{tau g}(z). Throws ParameterError unless tau > 0.
ScalarProxResult prox_scalar(double z, double tau);

/// Componentwise prox with the combined parameter tau * lambda, selecting the
/// smaller candidate on ties.
Vector prox_vector(const Vector& z, double tau_lambda);

/// In-place variant used on the solver hot path; `out` is resized as needed.
void prox_vector(const Vector& z, double tau_lambda, Vector& out);

}  // namespace binopt
