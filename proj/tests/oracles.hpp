// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "fpi/vector.hpp"

namespace oracle {

using fpi::VectorD;

// min ||sum w_k x_k|| over a grid on the weight simplex (n <= 3).
inline double min_norm_grid(const std::vector<VectorD>& pts, int steps = 2000) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = pts.size(), d = pts.front().dim();
  auto eval = [&](double a, double b, double c) {
    VectorD x(d);
    x += a * pts[0];
    if (n > 1) x += b * pts[1];
    if (n > 2) x += c * pts[2];
    best = std::min(best, fpi::norm(x));
  };
  if (n == 1) eval(1, 0, 0);
  for (int i = 0; i <= steps && n >= 2; ++i)
    for (int j = 0; j <= (n == 3 ? steps - i : 0); ++j) {
      const double a = double(i) / steps;
      const double b = n == 3 ? double(j) / steps : 1.0 - a;
      eval(a, b, 1.0 - a - b);
    }
  return best;
}

inline double min_product(const std::vector<VectorD>& pts, const VectorD& u) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& x : pts) lo = std::min(lo, fpi::dot(x, u));
  return lo;
}

// -max_u min_j <x_j, u> over `samples` directions (circle grid for d = 2,
// Fibonacci sphere for d = 3), then a shrinking local search from the best.
inline double delta_by_sampling(const std::vector<VectorD>& pts, std::size_t samples = 1'000'000) {
  const std::size_t d = pts.front().dim();
  auto dir = [&](std::size_t k) {
    if (d == 2) {
      const double a = 2.0 * std::numbers::pi * double(k) / double(samples);
      return VectorD{std::cos(a), std::sin(a)};
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double z = 1.0 - 2.0 * (double(k) + 0.5) / double(samples);
    const double r = std::sqrt(1.0 - z * z);
    return VectorD{r * std::cos(golden * double(k)), r * std::sin(golden * double(k)), z};
  };
  VectorD best_u = dir(0);
  double best = min_product(pts, best_u);
  for (std::size_t k = 1; k < samples; ++k) {
    const VectorD u = dir(k);
    const double v = min_product(pts, u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (double step = 1e-2; step > 1e-9; step *= 0.7)
    for (int t = 0; t < 200; ++t) {
      VectorD u = best_u;
      for (std::size_t c = 0; c < d; ++c) u[c] += step * g(rng);
      u /= fpi::norm(u);
      const double v = min_product(pts, u);
      if (v > best) {
        best = v;
        best_u = u;
      }
    }
  return -best;
}

struct RefBall {
  VectorD center;
  double radius = std::numeric_limits<double>::infinity();
};

// Circumcenter of k affinely independent points within their affine hull.
inline std::optional<RefBall> circum(const std::vector<VectorD>& s) {
  const std::size_t k = s.size() - 1, d = s.front().dim();
  if (k == 0) return RefBall{s[0], 0.0};
  Eigen::MatrixXd a(d, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t r = 0; r < d; ++r) a(r, j) = s[j + 1][r] - s[0][r];
  if (Eigen::FullPivLU<Eigen::MatrixXd>(a).rank() < Eigen::Index(k)) return std::nullopt;
  const Eigen::MatrixXd m = 2.0 * a.transpose() * a;
  Eigen::VectorXd rhs(k);
  for (std::size_t j = 0; j < k; ++j) rhs(j) = a.col(j).squaredNorm();
  const Eigen::VectorXd alpha = m.ldlt().solve(rhs);
  const Eigen::VectorXd off = a * alpha;
  VectorD c = s[0];
  for (std::size_t r = 0; r < d; ++r) c[r] += off(r);
  return RefBall{c, fpi::distance(c, s[0])};
}

// Smallest enclosing ball by trying every subset of size 2..d+1.
inline RefBall seb_by_subsets(const std::vector<VectorD>& pts) {
  const std::size_t n = pts.size(), d = pts.front().dim();
  RefBall best;
  std::vector<std::size_t> idx;
  auto consider = [&] {
    std::vector<VectorD> s;
    for (auto i : idx) s.push_back(pts[i]);
    const auto b = circum(s);
    if (!b || b->radius >= best.radius) return;
    for (const auto& p : pts)
      if (fpi::distance(p, b->center) > b->radius * (1 + 1e-12) + 1e-12) return;
    best = *b;
  };
  for (std::size_t k = 2; k <= std::min(n, d + 1); ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      consider();
      std::size_t j = k;
      while (j > 0 && idx[j - 1] == n - k + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  return best;
}

inline Eigen::MatrixXd random_orthogonal(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

inline VectorD apply(const Eigen::MatrixXd& q, const VectorD& v) {
  VectorD out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) out[i] += q(i, j) * v[j];
  return out;
}

inline std::vector<VectorD> random_points(std::size_t n, std::size_t d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  std::vector<VectorD> pts;
  for (std::size_t i = 0; i < n; ++i) {
    VectorD p(d);
    for (std::size_t c = 0; c < d; ++c) p[c] = scale * g(rng);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace oracle
