#pragma once

#include "binopt/objectives.hpp"
#include "binopt/types.hpp"

namespace binopt {

/// F(x; lambda) = f(x) + lambda * p(x) over the unit box.
class PenaltyObjective {
 public:
  PenaltyObjective(const Objective& base, double lambda);

  double value(const Vector& x) const;
  const Objective& base() const { return *base_; }
  double lambda() const { return lambda_; }

 private:
  const Objective* base_;
  double lambda_;
};

/// F(x; lambda). Throws DomainError if x leaves [0,1]^n.
double penalty_value(const Objective& f, const Vector& x, double lambda);

/// Upper bound on max_{x in box} ||grad f(x)||_inf / 3: exact for QUBO, the
/// objective's declared closed-form over-estimate otherwise. Throws
/// CapabilityError if the objective declares no bound.
double lambda_bar(const Objective& f);

/// lambda_bar + 1 / (3 tau): any prox step taken with lambda at or above
/// this value lands on a binary point.
double binary_snap_threshold(double lambda_bar, double tau);

struct StationarityCertificate {
  double residual;  ///< min over prox selections v of ||x - v||_2
  double tau;
  double lambda;
  bool is_binary;
};

/// Distance from x to its own prox-gradient image Prox_{tau lambda p}(x - tau grad f(x)),
/// minimized over the members of the prox set.
StationarityCertificate stationarity_check(const Vector& x, const Objective& f, double tau,
                                           double lambda);

/// Same, with a precomputed gradient.
StationarityCertificate stationarity_check(const Vector& x, const Vector& grad, double tau,
                                           double lambda);

}  // namespace binopt
