#include "binopt/penalty_model.hpp"

#include <cmath>
#include <limits>

#include "binopt/cubic_penalty.hpp"
#include "binopt/errors.hpp"

namespace binopt {

namespace {

void require_box(const Vector& x) {
  if (!in_box(x)) throw DomainError("point lies outside the unit box");
}

}  // namespace

PenaltyObjective::PenaltyObjective(const Objective& base, double lambda)
    : base_(&base), lambda_(lambda) {
  if (!(lambda >= 0.0)) throw ParameterError("penalty parameter must be nonnegative");
}

double PenaltyObjective::value(const Vector& x) const { return penalty_value(*base_, x, lambda_); }

double penalty_value(const Objective& f, const Vector& x, double lambda) {
  require_box(x);
  if (!(lambda >= 0.0)) throw ParameterError("penalty parameter must be nonnegative");
  return f.value(x) + lambda * p_value(x);
}

double lambda_bar(const Objective& f) {
  const auto bound = f.lambda_bar_bound();
  if (!bound) throw CapabilityError("objective '" + f.name() + "' declares no gradient bound");
  return *bound;
}

double binary_snap_threshold(double lambda_bar, double tau) {
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  return lambda_bar + 1.0 / (3.0 * tau);
}

StationarityCertificate stationarity_check(const Vector& x, const Vector& grad, double tau,
                                           double lambda) {
  require_box(x);
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
  if (grad.size() != x.size()) throw ParameterError("gradient length mismatch");

  const double tl = tau * lambda;
  double sq = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const SmallSet cands = prox_scalar(x[i] - tau * grad[i], tl).candidates;
    double best = std::numeric_limits<double>::infinity();
    for (double c : cands.values()) best = std::min(best, std::abs(x[i] - c));
    sq += best * best;
  }
  return {std::sqrt(sq), tau, lambda, is_binary(x)};
}

StationarityCertificate stationarity_check(const Vector& x, const Objective& f, double tau,
                                           double lambda) {
  require_box(x);
  return stationarity_check(x, f.gradient(x), tau, lambda);
}

}  // namespace binopt
