#include "binopt/presets.hpp"

#include <algorithm>
#include <cmath>

namespace binopt {

namespace {

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Floor keeping lambda0 admissible when A^T b vanishes (e.g. b = 0).
constexpr double kMinLambda0 = 1e-12;

}  // namespace

double matrix_inf_norm(const Matrix& m, MatrixNorm kind) {
  return kind == MatrixNorm::MaxAbsEntry ? m.max_abs_entry() : m.max_abs_row_sum();
}

double recovery_lambda_ratio(Index m, Index n, Index s) {
  if (2 * m <= n && n < 10 * s) {
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    const double exponent = 4.0 * std::sqrt(static_cast<double>(s)) / std::log2(mn);
    return std::min(0.01, std::pow(0.1, exponent));
  }
  return 0.05;
}

Preset recovery_preset(const Matrix& a, const Vector& b, Index s, MatrixNorm norm) {
  Preset p;
  AppaConfig& c = p.config;
  c.eta = 1.0;
  c.sigma = 1e-8;
  c.alpha = 0.25;
  c.pi = 1.5;
  c.theta = matrix_inf_norm(a, norm) + inf_norm(b);
  c.k0 = a.cols() < 10000 ? 100 : 50;
  Vector atb;
  a.transpose_multiply(b, atb);
  c.lambda0 = std::max(recovery_lambda_ratio(a.rows(), a.cols(), s) * inf_norm(atb), kMinLambda0);
  p.x0 = Vector::Zero(a.cols());
  return p;
}

Preset mimo_preset(const Matrix& a, const Vector& b, MatrixNorm norm) {
  Preset p;
  AppaConfig& c = p.config;
  c.eta = 2.0;
  c.sigma = 1e-8;
  c.alpha = 0.25;
  c.pi = 1.25;
  c.k0 = 10;
  c.theta = matrix_inf_norm(a, norm) + inf_norm(b);
  Vector atb;
  a.transpose_multiply(b, atb);
  c.lambda0 = std::max(0.01 * inf_norm(atb), kMinLambda0);
  p.x0 = Vector::Zero(a.cols());
  return p;
}

Preset onebit_preset(const Matrix& h, const Vector& y, MatrixNorm norm) {
  Preset p;
  AppaConfig& c = p.config;
  c.eta = 0.1;
  c.sigma = 1e-8;
  c.alpha = 0.5;
  c.pi = 1.2;
  c.k0 = 10;
  c.theta = matrix_inf_norm(h, norm) + inf_norm(y);
  Vector hty;
  h.transpose_multiply(y, hty);
  c.lambda0 = std::max(0.005 * inf_norm(hty), kMinLambda0);
  p.x0 = Vector::Zero(h.cols());
  return p;
}

Preset qubo_preset(const Matrix& q, MatrixNorm norm) {
  Preset p;
  AppaConfig& c = p.config;
  c.eta = 1.0;
  c.sigma = 1e-8;
  c.alpha = 0.25;
  c.pi = 1.5;
  c.k0 = 100;
  c.theta = std::max(matrix_inf_norm(q, norm), kMinLambda0);
  c.lambda0 = std::max(0.001 * q.frobenius_norm(), kMinLambda0);
  p.x0 = Vector::Constant(q.cols(), 0.5);
  return p;
}

}  // namespace binopt
