#include "fpi/matrix.hpp"

#include <Eigen/Dense>

namespace fpi {

std::size_t exact_rank(const DenseMatrix<Rational>& m) {
  DenseMatrix<Rational> a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != rank)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(rank, c));
    for (std::size_t r = rank + 1; r < a.rows(); ++r) {
      if (a(r, col) == 0) continue;
      Rational f = a(r, col) / a(rank, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(rank, c);
    }
    ++rank;
  }
  return rank;
}

std::size_t numeric_rank(std::span<const VectorD> points, double rel_tol) {
  if (points.empty()) return 0;
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto d = static_cast<Eigen::Index>(points.front().dim());
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (points[static_cast<std::size_t>(i)].dim() != static_cast<std::size_t>(d))
      throw DimensionMismatch(static_cast<std::size_t>(d), points[static_cast<std::size_t>(i)].dim());
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = points[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

}  // namespace fpi
