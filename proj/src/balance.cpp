#include "fpi/balance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fpi/miniball.hpp"
#include "fpi/simplex.hpp"

namespace fpi {

namespace {

constexpr double kDuplicateTolerance = 1e-12;

struct Deduped {
  std::vector<VectorD> points;
  std::vector<std::size_t> origin;  // input index of each kept point
};

Deduped dedupe(std::span<const VectorD> points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  Deduped out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != points.front().dim()) throw DimensionMismatch(points.front().dim(), points[i].dim());
    bool dup = false;
    for (const auto& q : out.points)
      if (distance(points[i], q) <= kDuplicateTolerance) {
        dup = true;
        break;
      }
    if (!dup) {
      out.points.push_back(points[i]);
      out.origin.push_back(i);
    }
  }
  return out;
}

// argmin ||sum a_k p_k|| over the affine hull of the corral, or nullopt if
// the corral is affinely dependent.
std::optional<Eigen::VectorXd> affine_minimizer(const std::vector<VectorD>& pts, const std::vector<std::size_t>& s) {
  const std::size_t k = s.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m(i, j) = dot(pts[s[i]], pts[s[j]]);
    m(i, k) = 1.0;
    m(k, i) = 1.0;
  }
  rhs(k) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible()) return std::nullopt;
  return Eigen::VectorXd(lu.solve(rhs).head(k));
}

VectorD combine(const std::vector<VectorD>& pts, const std::vector<std::size_t>& s, const std::vector<double>& w) {
  VectorD x(pts.front().dim());
  for (std::size_t k = 0; k < s.size(); ++k) x += w[k] * pts[s[k]];
  return x;
}

// Support LP: max lambda_i s.t. sum lambda_j x_j = 0, sum lambda_j = 1, lambda >= 0.
std::vector<std::size_t> support_of_origin(const std::vector<VectorD>& pts) {
  const std::size_t n = pts.size(), d = pts.front().dim();
  DenseMatrix<double> a(d + 1, n);
  std::vector<double> b(d + 1, 0.0);
  b[d] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < d; ++r) a(r, j) = pts[j][r];
    a(d, j) = 1.0;
  }
  std::vector<std::size_t> s;
  std::vector<bool> known(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (known[i]) {
      s.push_back(i);
      continue;
    }
    std::vector<double> c(n, 0.0);
    c[i] = 1.0;
    const auto lp = maximize(a, b, c);
    if (lp.status == LpResult::Status::Infeasible) return {};
    if (lp.status == LpResult::Status::Optimal && lp.objective > kWeightTolerance) s.push_back(i);
    // Every index carried with positive weight by this solution is in S too.
    if (lp.status == LpResult::Status::Optimal)
      for (std::size_t j = i + 1; j < n; ++j)
        if (lp.x[j] > kWeightTolerance) known[j] = true;
  }
  return s;
}

double facet_delta(const std::vector<VectorD>& pts) {
  const std::size_t n = pts.size(), d = pts.front().dim();
  if (n < d) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    // Unit normal w of the hyperplane through the chosen d points.
    Eigen::MatrixXd m(d - 1, d);
    for (std::size_t r = 1; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r - 1, c) = pts[idx[r]][c] - pts[idx[0]][c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const bool full = d == 1 || sv(d - 2) > kRankTolerance * std::max(1.0, sv(0));
    if (full) {
      Eigen::VectorXd w = svd.matrixV().col(d - 1);
      double h = 0.0;
      for (std::size_t c = 0; c < d; ++c) h += w(c) * pts[idx[0]][c];
      if (h < 0) {
        w = -w;
        h = -h;
      }
      bool supporting = true;
      for (const auto& p : pts) {
        double v = 0.0;
        for (std::size_t c = 0; c < d; ++c) v += w(c) * p[c];
        if (v > h + 1e-9) {
          supporting = false;
          break;
        }
      }
      if (supporting) best = std::min(best, h);
    }
    // Next d-subset in lexicographic order.
    std::size_t k = d;
    while (k > 0 && idx[k - 1] == n - d + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return std::isfinite(best) ? best : 0.0;
}

}  // namespace

VectorD min_norm_point(std::span<const VectorD> points) {
  const auto dd = dedupe(points);
  const auto& pts = dd.points;
  const std::size_t n = pts.size();

  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, norm_sq(p));
  const double ztol = 1e-14 * std::max(scale, 1.0);

  std::size_t start = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (norm_sq(pts[j]) < norm_sq(pts[start])) start = j;
  std::vector<std::size_t> s{start};
  std::vector<double> w{1.0};
  VectorD x = pts[start];

  for (std::size_t major = 0; major < 100 * (n + 10); ++major) {
    const double xx = norm_sq(x);
    if (xx <= ztol) break;
    std::size_t j = 0;
    double lo = dot(x, pts[0]);
    for (std::size_t k = 1; k < n; ++k) {
      const double v = dot(x, pts[k]);
      if (v < lo) {
        lo = v;
        j = k;
      }
    }
    if (lo >= xx - 1e-12 * std::max(scale, 1.0)) break;
    if (std::find(s.begin(), s.end(), j) != s.end()) break;
    s.push_back(j);
    w.push_back(0.0);

    for (std::size_t minor = 0; minor < 10 * (n + 10); ++minor) {
      const auto alpha = affine_minimizer(pts, s);
      if (!alpha) {
        // Degenerate corral: drop the oldest zero-ish member and retry.
        auto it = std::min_element(w.begin(), w.end() - 1);
        const auto pos = static_cast<std::size_t>(it - w.begin());
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(pos));
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(pos));
        continue;
      }
      bool interior = true;
      for (std::size_t k = 0; k < s.size(); ++k)
        if ((*alpha)(static_cast<Eigen::Index>(k)) <= 1e-14) interior = false;
      if (interior) {
        for (std::size_t k = 0; k < s.size(); ++k) w[k] = (*alpha)(static_cast<Eigen::Index>(k));
        break;
      }
      double theta = 1.0;
      for (std::size_t k = 0; k < s.size(); ++k) {
        const double a = (*alpha)(static_cast<Eigen::Index>(k));
        if (a <= 1e-14 && w[k] - a > 0) theta = std::min(theta, w[k] / (w[k] - a));
      }
      for (std::size_t k = 0; k < s.size(); ++k)
        w[k] = theta * (*alpha)(static_cast<Eigen::Index>(k)) + (1.0 - theta) * w[k];
      std::vector<std::size_t> s2;
      std::vector<double> w2;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (w[k] > 1e-14) {
          s2.push_back(s[k]);
          w2.push_back(w[k]);
        }
      s = std::move(s2);
      w = std::move(w2);
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      for (auto& v : w) v /= total;
    }
    x = combine(pts, s, w);
  }
  return x;
}

VectorD min_norm_point(const PointSet& ps) { return min_norm_point(std::span<const VectorD>(ps.points())); }

bool min_norm_certificate(std::span<const VectorD> points, const VectorD& p, double tol) {
  for (const auto& x : points)
    if (dot(p, x - p) < -tol) return false;
  return true;
}

BalanceReport classify_balance(std::span<const VectorD> points) {
  const auto dd = dedupe(points);
  const std::size_t d = dd.points.front().dim();
  BalanceReport rep;
  const auto s = support_of_origin(dd.points);
  if (s.empty()) {
    rep.b = 0;
    rep.min_norm_point = min_norm_point(dd.points);
    rep.delta = -norm(rep.min_norm_point);
    return rep;
  }
  std::vector<VectorD> face;
  for (std::size_t i : s) {
    face.push_back(dd.points[i]);
    rep.support.push_back(dd.origin[i]);
  }
  rep.b = numeric_rank(face, kRankTolerance);
  rep.min_norm_point = VectorD(d);
  rep.delta = rep.b == d ? facet_delta(dd.points) : 0.0;
  return rep;
}

BalanceReport classify_balance(const PointSet& ps) {
  require_valid(ps);
  return classify_balance(std::span<const VectorD>(ps.points()));
}

double delta(std::span<const VectorD> points) { return classify_balance(points).delta; }

double delta(const PointSet& ps) { return classify_balance(ps).delta; }

bool seb_equivalence_check(std::span<const VectorD> points) {
  const Ball ball = seb(points);
  const bool unit_ball = norm(ball.center) <= 1e-8 && std::abs(ball.radius - 1.0) <= 1e-8;
  return unit_ball == (delta(points) >= 0.0);
}

bool seb_equivalence_check(const PointSet& ps) {
  require_valid(ps);
  return seb_equivalence_check(std::span<const VectorD>(ps.points()));
}

nlohmann::json to_json(const BalanceReport& r) {
  nlohmann::json j;
  j["b"] = r.b;
  j["delta"] = r.delta;
  j["support"] = r.support;
  j["min_norm_point"] = std::vector<double>(r.min_norm_point.begin(), r.min_norm_point.end());
  return j;
}

}  // namespace fpi
