#pragma once

// Named hyperparameter presets for the experiment families. Each returns the
// configuration and the starting point; every field can be overridden after.

#include <string>

#include "binopt/appa_solver.hpp"
#include "binopt/matrix.hpp"

namespace binopt {

/// How a matrix "infinity norm" in the theta rules is read.
enum class MatrixNorm {
  MaxAbsEntry,  ///< max_ij |M_ij|
  MaxRowSum,    ///< induced infinity norm (default)
};

double matrix_inf_norm(const Matrix& m, MatrixNorm kind);

struct Preset {
  AppaConfig config;
  Vector x0;
};

/// Initial-penalty ratio r for recovery problems:
/// min(0.01, 0.1^(4 sqrt(s) / log2(m n))) when 2m <= n < 10s, else 0.05.
double recovery_lambda_ratio(Index m, Index n, Index s);

/// (eta, sigma, alpha, pi) = (1, 1e-8, 0.25, 1.5); theta = ||A|| + ||b||_inf;
/// k0 = 100 (n < 10^4) or 50; lambda0 = r ||A^T b||_inf; x0 = 0.
Preset recovery_preset(const Matrix& a, const Vector& b, Index s,
                       MatrixNorm norm = MatrixNorm::MaxRowSum);

/// Classical MIMO: (eta, alpha, pi, k0) = (2, 0.25, 1.25, 10),
/// lambda0 = 0.01 ||A^T b||_inf, rest as recovery; x0 = 0.
Preset mimo_preset(const Matrix& a, const Vector& b, MatrixNorm norm = MatrixNorm::MaxRowSum);

/// One-bit MIMO: (eta, alpha, pi, k0) = (0.1, 0.5, 1.2, 10),
/// theta = ||H|| + ||y||_inf, lambda0 = 0.005 ||H^T y||_inf; x0 = 0.
Preset onebit_preset(const Matrix& h, const Vector& y, MatrixNorm norm = MatrixNorm::MaxRowSum);

/// QUBO: (eta, sigma, alpha, pi, k0) = (1, 1e-8, 0.25, 1.5, 100), theta = ||Q||,
/// lambda0 = 0.001 ||Q||_F. Starts at the box centre: x = 0 has zero gradient
/// for every 1/2 <x, Qx>, hence is already a fixed point of the iteration.
Preset qubo_preset(const Matrix& q, MatrixNorm norm = MatrixNorm::MaxRowSum);

}  // namespace binopt
