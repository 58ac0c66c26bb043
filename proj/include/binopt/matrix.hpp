#pragma once

#include <functional>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "binopt/types.hpp"

namespace binopt {

using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Real matrix stored either dense or in compressed row form.
///
/// Objectives only need products with the matrix and its transpose plus a few
/// entrywise norms, so both storages sit behind one value type.
class Matrix {
 public:
  Matrix() = default;
  Matrix(DenseMatrix dense) : storage_(std::move(dense)) {}  // NOLINT(implicit)
  Matrix(SparseMatrix sparse) : storage_(std::move(sparse)) {}  // NOLINT(implicit)

  /// Picks storage by the usual rule: dense when density > 0.25 or cols <= 2000.
  static Matrix choose_storage(DenseMatrix dense);

  Index rows() const;
  Index cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(storage_); }
  Index nonzeros() const;

  void multiply(const Vector& x, Vector& out) const;
  void transpose_multiply(const Vector& r, Vector& out) const;
  Vector operator*(const Vector& x) const;

  /// |M| x and |M|^T r with entrywise absolute values.
  Vector abs_multiply(const Vector& x) const;
  Vector abs_transpose_multiply(const Vector& r) const;

  /// Per-row sums of the positive parts and of the negative parts' magnitudes.
  void row_sign_sums(Vector& positive, Vector& negative) const;

  double max_abs_entry() const;
  double max_abs_row_sum() const;
  double frobenius_norm() const;

  /// Calls f(row, col, value) for every stored entry, row-major order.
  void for_each_entry(const std::function<void(Index, Index, double)>& f) const;

  DenseMatrix to_dense() const;
  bool is_symmetric(double tol = 0.0) const;

  const std::variant<DenseMatrix, SparseMatrix>& storage() const { return storage_; }

 private:
  std::variant<DenseMatrix, SparseMatrix> storage_;
};

}  // namespace binopt
