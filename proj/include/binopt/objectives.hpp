#pragma once

#include <optional>
#include <string>

#include "binopt/matrix.hpp"
#include "binopt/types.hpp"

namespace binopt {

/// Smooth function over the unit box [0,1]^n.
///
/// Implementations are immutable after construction, so `value` and
/// `value_and_gradient` may be called concurrently.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Index dim() const = 0;
  virtual std::string name() const = 0;

  virtual double value(const Vector& x) const = 0;

  /// Writes the gradient into `grad` (resized) and returns the value.
  virtual double value_and_gradient(const Vector& x, Vector& grad) const = 0;

  Vector gradient(const Vector& x) const {
    Vector g;
    value_and_gradient(x, g);
    return g;
  }

  /// Sound upper bound on max over the box of ||grad f||_inf / 3, if the
  /// objective can provide one in closed form.
  virtual std::optional<double> lambda_bar_bound() const { return std::nullopt; }

  /// True when `lambda_bar_bound` is the exact maximum rather than an over-estimate.
  virtual bool lambda_bar_is_exact() const { return false; }

  /// Upper estimate of the gradient Lipschitz constant on the box, for diagnostics.
  virtual std::optional<double> smoothness_estimate() const { return std::nullopt; }

 protected:
  void check_dim(const Vector& x) const;
};

/// f(x) = 1/2 <x, Qx> with Q symmetrized at construction.
class QuboObjective final : public Objective {
 public:
  explicit QuboObjective(Matrix q);

  Index dim() const override { return q_.rows(); }
  std::string name() const override { return "qubo"; }
  double value(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;

  /// Exact: max_i max(sum_j Q_ij^+, sum_j Q_ij^-) / 3. The gradient Qx is
  /// affine, so each component's range over the box is attained at a corner.
  std::optional<double> lambda_bar_bound() const override { return lambda_bar_; }
  bool lambda_bar_is_exact() const override { return true; }
  std::optional<double> smoothness_estimate() const override;

  const Matrix& q() const { return q_; }

 private:
  Matrix q_;
  double lambda_bar_ = 0.0;
};

/// f(x) = 1/2 ||Ax - b||_q^q for q > 1. With q = 2 this is also the
/// classical (real-stacked) MIMO maximum-likelihood objective.
class LqRecoveryObjective final : public Objective {
 public:
  LqRecoveryObjective(Matrix a, Vector b, double q);

  Index dim() const override { return a_.cols(); }
  std::string name() const override { return "lq_recovery"; }
  double value(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;

  /// (q/2) || |A|^T rbar^{q-1} ||_inf / 3 with rbar = |A| 1 + |b|, which
  /// dominates |Ax - b| componentwise on the box.
  std::optional<double> lambda_bar_bound() const override { return lambda_bar_; }
  std::optional<double> smoothness_estimate() const override;

  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  double q() const { return q_; }

 private:
  Matrix a_;
  Vector b_;
  double q_;
  double lambda_bar_ = 0.0;
};

/// One-bit MIMO negative log-likelihood in the box variable x = (z + 1) / 2:
///   f(x) = -sum_i log Phi(y_i <h_i, 2x - 1> / rho).
class OneBitMimoObjective final : public Objective {
 public:
  OneBitMimoObjective(Matrix h, Vector y, double rho);

  Index dim() const override { return h_.cols(); }
  std::string name() const override { return "onebit_mimo"; }
  double value(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;

  /// (2/rho) || |H|^T Rbar ||_inf / 3 with Rbar_i = R(-||h_i||_1 / rho); the
  /// inverse Mills ratio R is decreasing and u_i >= -||h_i||_1 / rho on the box.
  std::optional<double> lambda_bar_bound() const override { return lambda_bar_; }
  std::optional<double> smoothness_estimate() const override;

  const Matrix& h() const { return h_; }
  const Vector& y() const { return y_; }
  double rho() const { return rho_; }

 private:
  void margins(const Vector& x, Vector& u) const;

  Matrix h_;
  Vector y_;
  double rho_;
  double lambda_bar_ = 0.0;
};

}  // namespace binopt
