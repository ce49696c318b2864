#pragma once

#include "hpt/scalar.hpp"

#include <optional>
#include <vector>

namespace hpt {

/// Small dense matrix over Q, row-major. Used for basis selection, ranks and
/// inverses on per-degree blocks; the large operators stay sparse.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> column(std::size_t c) const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  DenseMatrix reduced;               // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination; pivots are taken left to right, first nonzero row.
RowEchelon row_reduce(DenseMatrix m);
std::size_t rank(const DenseMatrix& m);
/// Basis of the kernel, one vector per free column (standard RREF basis).
std::vector<std::vector<Scalar>> kernel_basis(const DenseMatrix& m);
std::optional<DenseMatrix> inverse(const DenseMatrix& m);

}  // namespace hpt
