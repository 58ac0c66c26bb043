#include "binopt/matrix.hpp"

#include <cmath>

namespace binopt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kDenseDensity = 0.25;
constexpr Index kDenseMaxCols = 2000;

}  // namespace

Matrix Matrix::choose_storage(DenseMatrix dense) {
  const double total = static_cast<double>(dense.rows()) * static_cast<double>(dense.cols());
  const double nnz = static_cast<double>((dense.array() != 0.0).count());
  if (dense.cols() <= kDenseMaxCols || total == 0.0 || nnz / total > kDenseDensity)
    return Matrix(std::move(dense));
  SparseMatrix sparse = dense.sparseView();
  sparse.makeCompressed();
  return Matrix(std::move(sparse));
}

Index Matrix::rows() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.rows()); }, storage_);
}

Index Matrix::cols() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.cols()); }, storage_);
}

Index Matrix::nonzeros() const {
  return std::visit(Overloaded{[](const DenseMatrix& m) { return static_cast<Index>(m.size()); },
                               [](const SparseMatrix& m) { return static_cast<Index>(m.nonZeros()); }},
                    storage_);
}

void Matrix::multiply(const Vector& x, Vector& out) const {
  std::visit([&](const auto& m) { out.noalias() = m * x; }, storage_);
}

void Matrix::transpose_multiply(const Vector& r, Vector& out) const {
  std::visit([&](const auto& m) { out.noalias() = m.transpose() * r; }, storage_);
}

Vector Matrix::operator*(const Vector& x) const {
  Vector out;
  multiply(x, out);
  return out;
}

Vector Matrix::abs_multiply(const Vector& x) const {
  return std::visit(Overloaded{[&](const DenseMatrix& m) -> Vector { return m.cwiseAbs() * x; },
                               [&](const SparseMatrix& m) -> Vector { return m.cwiseAbs() * x; }},
                    storage_);
}

Vector Matrix::abs_transpose_multiply(const Vector& r) const {
  return std::visit(
      Overloaded{[&](const DenseMatrix& m) -> Vector { return m.cwiseAbs().transpose() * r; },
                 [&](const SparseMatrix& m) -> Vector { return m.cwiseAbs().transpose() * r; }},
      storage_);
}

void Matrix::row_sign_sums(Vector& positive, Vector& negative) const {
  positive = Vector::Zero(rows());
  negative = Vector::Zero(rows());
  for_each_entry([&](Index i, Index, double v) {
    if (v > 0.0)
      positive[i] += v;
    else
      negative[i] -= v;
  });
}

double Matrix::max_abs_entry() const {
  return std::visit(
      Overloaded{[](const DenseMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); },
                 [](const SparseMatrix& m) {
                   double best = 0.0;
                   for (Index k = 0; k < m.nonZeros(); ++k)
                     best = std::max(best, std::abs(m.valuePtr()[k]));
                   return best;
                 }},
      storage_);
}

double Matrix::max_abs_row_sum() const {
  const Vector sums = abs_multiply(Vector::Ones(cols()));
  return sums.size() == 0 ? 0.0 : sums.maxCoeff();
}

double Matrix::frobenius_norm() const {
  return std::visit([](const auto& m) { return static_cast<double>(m.norm()); }, storage_);
}

void Matrix::for_each_entry(const std::function<void(Index, Index, double)>& f) const {
  std::visit(Overloaded{[&](const DenseMatrix& m) {
                          for (Index i = 0; i < m.rows(); ++i)
                            for (Index j = 0; j < m.cols(); ++j) f(i, j, m(i, j));
                        },
                        [&](const SparseMatrix& m) {
                          for (Index i = 0; i < m.outerSize(); ++i)
                            for (SparseMatrix::InnerIterator it(m, i); it; ++it)
                              f(it.row(), it.col(), it.value());
                        }},
             storage_);
}

DenseMatrix Matrix::to_dense() const {
  return std::visit(Overloaded{[](const DenseMatrix& m) { return m; },
                               [](const SparseMatrix& m) { return DenseMatrix(m); }},
                    storage_);
}

bool Matrix::is_symmetric(double tol) const {
  if (rows() != cols()) return false;
  if (rows() == 0) return true;
  return std::visit(
      Overloaded{[&](const DenseMatrix& m) { return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol; },
                 [&](const SparseMatrix& m) {
                   SparseMatrix t = m.transpose();
                   SparseMatrix d = m - t;
                   for (Index k = 0; k < d.nonZeros(); ++k)
                     if (std::abs(d.valuePtr()[k]) > tol) return false;
                   return true;
                 }},
      storage_);
}

}  // namespace binopt
