#include "fpi/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fpi {

namespace {

class Tableau {
 public:
  Tableau(const DenseMatrix<double>& a, std::span<const double> b)
      : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), t_((m_ + 1) * width_, 0.0), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = b[i] < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * a(i, j);
      at(i, n_ + i) = 1.0;
      at(i, rhs()) = sign * b[i];
      basis_[i] = n_ + i;
    }
  }

  double& at(std::size_t r, std::size_t c) { return t_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * width_ + c]; }
  std::size_t rhs() const { return n_ + m_; }
  std::size_t obj() const { return m_; }

  // Objective row = c_B B^-1 A - c for the given cost vector (maximization).
  void load_objective(const std::vector<double>& cost) {
    for (std::size_t j = 0; j <= rhs(); ++j) {
      double v = j < rhs() ? -cost[j] : 0.0;
      for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * at(i, j);
      at(obj(), j) = v;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= rhs(); ++j) at(r, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= rhs(); ++j) at(i, j) -= f * at(r, j);
    }
    basis_[r] = c;
  }

  // Returns false if unbounded. `allowed(j)` filters entering columns.
  template <class Allowed>
  bool optimize(double tol, Allowed&& allowed) {
    const std::size_t max_iter = 50 * (m_ + n_ + 10);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t enter = rhs();
      for (std::size_t j = 0; j < rhs(); ++j)
        if (allowed(j) && at(obj(), j) < -tol) {
          enter = j;  // Bland: first improving column
          break;
        }
      if (enter == rhs()) return true;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, enter) <= tol) continue;
        const double ratio = at(i, rhs()) / at(i, enter);
        if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && leave < m_ && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

  std::size_t m_, n_, width_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult maximize(const DenseMatrix<double>& a, std::span<const double> b, std::span<const double> c, double tol) {
  if (b.size() != a.rows() || c.size() != a.cols()) throw std::invalid_argument("LP shape mismatch");
  const std::size_t m = a.rows(), n = a.cols();
  Tableau t(a, b);
  LpResult out;

  // Phase 1: maximize -sum(artificials).
  std::vector<double> phase1(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1.0;
  t.load_objective(phase1);
  t.optimize(tol, [](std::size_t) { return true; });
  double scale = 1.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  if (t.at(t.obj(), t.rhs()) < -1e-9 * scale) {
    out.status = LpResult::Status::Infeasible;
    return out;
  }
  // Drive remaining artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis_[i] < n) continue;
    std::size_t col = n;
    double best = tol;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(t.at(i, j)) > best) {
        best = std::abs(t.at(i, j));
        col = j;
      }
    if (col < n) t.pivot(i, col);
  }

  // Phase 2 over the original columns only.
  std::vector<double> cost(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  t.load_objective(cost);
  if (!t.optimize(tol, [n](std::size_t j) { return j < n; })) {
    out.status = LpResult::Status::Unbounded;
    return out;
  }
  out.status = LpResult::Status::Optimal;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis_[i] < n) out.x[t.basis_[i]] = std::max(0.0, t.at(i, t.rhs()));
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
  return out;
}

}  // namespace fpi
