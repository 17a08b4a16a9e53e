#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fpi/vector.hpp"

namespace fpi {

/// Row-major dense matrix; used for Gram matrices and LP tableaus.
template <Scalar T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using GramMatrix = DenseMatrix<Rational>;

template <Scalar T>
DenseMatrix<T> gram_matrix(std::span<const Vector<T>> points) {
  DenseMatrix<T> g(points.size(), points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i; j < points.size(); ++j) {
      g(i, j) = dot(points[i], points[j]);
      g(j, i) = g(i, j);
    }
  return g;
}

/// Exact rank by fraction-free-ish Gaussian elimination over the rationals.
std::size_t exact_rank(const DenseMatrix<Rational>& m);

/// Numerical rank of the n x d coordinate matrix: singular values above
/// rel_tol * sigma_max count.
std::size_t numeric_rank(std::span<const VectorD> points, double rel_tol = 1e-9);

}  // namespace fpi
