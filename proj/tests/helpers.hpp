#pragma once

#include "binopt/objectives.hpp"
#include "binopt/rng.hpp"

namespace binopt::testing {

// f(x) = 1/2 ||x - c||^2; no closed-form lambda-bar on purpose.
class ShiftedQuadratic final : public Objective {
 public:
  explicit ShiftedQuadratic(Vector c) : c_(std::move(c)) {}
  Index dim() const override { return c_.size(); }
  std::string name() const override { return "shifted_quadratic"; }
  double value(const Vector& x) const override { return 0.5 * (x - c_).squaredNorm(); }
  double value_and_gradient(const Vector& x, Vector& grad) const override {
    grad = x - c_;
    return value(x);
  }

 private:
  Vector c_;
};

// Constant zero objective.
class Zero final : public Objective {
 public:
  explicit Zero(Index n) : n_(n) {}
  Index dim() const override { return n_; }
  std::string name() const override { return "zero"; }
  double value(const Vector&) const override { return 0.0; }
  double value_and_gradient(const Vector&, Vector& grad) const override {
    grad = Vector::Zero(n_);
    return 0.0;
  }
  std::optional<double> lambda_bar_bound() const override { return 0.0; }

 private:
  Index n_;
};

inline DenseMatrix random_symmetric(Index n, Rng& rng, double scale = 1.0) {
  DenseMatrix q(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) q(i, j) = q(j, i) = scale * rng.normal();
  return q;
}

inline Vector random_box_point(Index n, Rng& rng) {
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = rng.uniform();
  return x;
}

inline Vector random_binary(Index n, Rng& rng) {
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;
  return x;
}

}  // namespace binopt::testing
