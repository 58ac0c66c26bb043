#include "binopt/objectives.hpp"

#include <cmath>

#include "binopt/errors.hpp"
#include "binopt/normal.hpp"

namespace binopt {

namespace {

Matrix symmetrized(Matrix q) {
  if (q.rows() != q.cols()) throw ParameterError("QUBO matrix must be square");
  if (q.is_symmetric()) return q;
  if (q.is_sparse()) {
    const SparseMatrix& s = std::get<SparseMatrix>(q.storage());
    SparseMatrix t = s.transpose();
    SparseMatrix sym = 0.5 * (s + t);
    sym.makeCompressed();
    return Matrix(std::move(sym));
  }
  const DenseMatrix& d = std::get<DenseMatrix>(q.storage());
  return Matrix(DenseMatrix(0.5 * (d + d.transpose())));
}

}  // namespace

void Objective::check_dim(const Vector& x) const {
  if (x.size() != dim())
    throw ParameterError("dimension mismatch: expected " + std::to_string(dim()) + ", got " +
                         std::to_string(x.size()));
}

// --- QUBO -------------------------------------------------------------------

QuboObjective::QuboObjective(Matrix q) : q_(symmetrized(std::move(q))) {
  Vector pos, neg;
  q_.row_sign_sums(pos, neg);
  lambda_bar_ = pos.size() == 0 ? 0.0 : pos.cwiseMax(neg).maxCoeff() / 3.0;
}

double QuboObjective::value(const Vector& x) const {
  check_dim(x);
  return 0.5 * x.dot(q_ * x);
}

double QuboObjective::value_and_gradient(const Vector& x, Vector& grad) const {
  check_dim(x);
  q_.multiply(x, grad);
  return 0.5 * x.dot(grad);
}

std::optional<double> QuboObjective::smoothness_estimate() const {
  // Induced inf-norm bounds the spectral norm of a symmetric matrix.
  return q_.max_abs_row_sum();
}

// --- l_q recovery -----------------------------------------------------------

LqRecoveryObjective::LqRecoveryObjective(Matrix a, Vector b, double q)
    : a_(std::move(a)), b_(std::move(b)), q_(q) {
  if (!(q_ > 1.0)) throw ParameterError("l_q recovery requires q > 1");
  if (b_.size() != a_.rows()) throw ParameterError("rhs length must equal the number of rows of A");
  const Vector rbar = a_.abs_multiply(Vector::Ones(a_.cols())) + b_.cwiseAbs();
  const Vector weights = rbar.array().pow(q_ - 1.0).matrix();
  const Vector col = a_.abs_transpose_multiply(weights);
  lambda_bar_ = col.size() == 0 ? 0.0 : 0.5 * q_ * col.maxCoeff() / 3.0;
}

double LqRecoveryObjective::value(const Vector& x) const {
  check_dim(x);
  Vector r;
  a_.multiply(x, r);
  r -= b_;
  if (q_ == 2.0) return 0.5 * r.squaredNorm();
  return 0.5 * r.array().abs().pow(q_).sum();
}

double LqRecoveryObjective::value_and_gradient(const Vector& x, Vector& grad) const {
  check_dim(x);
  Vector r;
  a_.multiply(x, r);
  r -= b_;
  if (q_ == 2.0) {
    a_.transpose_multiply(r, grad);
    return 0.5 * r.squaredNorm();
  }
  const Eigen::ArrayXd abs_r = r.array().abs();
  const double val = 0.5 * abs_r.pow(q_).sum();
  const Vector w = (0.5 * q_ * r.array().sign() * abs_r.pow(q_ - 1.0)).matrix();
  a_.transpose_multiply(w, grad);
  return val;
}

std::optional<double> LqRecoveryObjective::smoothness_estimate() const {
  if (q_ != 2.0) return std::nullopt;
  const double fro = a_.frobenius_norm();
  return fro * fro;
}

// --- one-bit MIMO -----------------------------------------------------------

OneBitMimoObjective::OneBitMimoObjective(Matrix h, Vector y, double rho)
    : h_(std::move(h)), y_(std::move(y)), rho_(rho) {
  if (!(rho_ > 0.0)) throw ParameterError("one-bit noise level rho must be positive");
  if (y_.size() != h_.rows()) throw ParameterError("observation length must equal rows of H");
  for (double v : y_)
    if (v != 1.0 && v != -1.0) throw ParameterError("one-bit observations must be +1 or -1");

  const Vector row_l1 = h_.abs_multiply(Vector::Ones(h_.cols()));
  Vector rbar(row_l1.size());
  for (Index i = 0; i < rbar.size(); ++i) {
    // Slight widening of the margin range keeps the bound sound under rounding.
    const double umin = -(row_l1[i] / rho_) * (1.0 + 1e-12) - 1e-12;
    rbar[i] = normal::inverse_mills(umin);
  }
  const Vector col = h_.abs_transpose_multiply(rbar);
  lambda_bar_ = col.size() == 0 ? 0.0 : (2.0 / rho_) * col.maxCoeff() / 3.0;
}

void OneBitMimoObjective::margins(const Vector& x, Vector& u) const {
  check_dim(x);
  const Vector z = 2.0 * x.array() - 1.0;
  h_.multiply(z, u);
  u = (u.array() * y_.array() / rho_).matrix();
}

double OneBitMimoObjective::value(const Vector& x) const {
  Vector u;
  margins(x, u);
  double val = 0.0;
  for (double ui : u) val -= normal::log_cdf(ui);
  return val;
}

double OneBitMimoObjective::value_and_gradient(const Vector& x, Vector& grad) const {
  Vector u;
  margins(x, u);
  double val = 0.0;
  Vector w(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    val -= normal::log_cdf(u[i]);
    w[i] = -(2.0 / rho_) * y_[i] * normal::inverse_mills(u[i]);
  }
  h_.transpose_multiply(w, grad);
  return val;
}

std::optional<double> OneBitMimoObjective::smoothness_estimate() const {
  // |R'(u)| <= 1, so the Hessian is bounded by (4 / rho^2) H^T H.
  const double fro = h_.frobenius_norm();
  return 4.0 * fro * fro / (rho_ * rho_);
}

}  // namespace binopt
