#include "fpi/miniball.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <list>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "fpi/io.hpp"
#include "fpi/simplex.hpp"

namespace fpi {

namespace {

double spread(std::span<const VectorD> points) {
  double s = 0.0;
  for (const auto& p : points)
    for (double x : p) s = std::max(s, std::abs(x));
  return std::max(s, 1.0);
}

// Indices of the first occurrence of each distinct point.
std::vector<std::size_t> distinct_indices(std::span<const VectorD> points, double tol) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dup = false;
    for (std::size_t k : keep)
      if (distance(points[i], points[k]) <= tol) {
        dup = true;
        break;
      }
    if (!dup) keep.push_back(i);
  }
  return keep;
}

std::optional<std::vector<double>> hull_weights(std::span<const VectorD> points, const VectorD& c, double tol) {
  const std::size_t d = c.dim(), k = points.size();
  if (k == 0) return std::nullopt;
  DenseMatrix<double> a(d + 1, k);
  std::vector<double> b(d + 1, 1.0), cost(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < d; ++r) a(r, j) = points[j][r];
    a(d, j) = 1.0;
  }
  for (std::size_t r = 0; r < d; ++r) b[r] = c[r];
  const auto lp = maximize(a, b, cost);
  if (lp.status != LpResult::Status::Optimal) return std::nullopt;
  // Confirm the combination directly; phase 1 only bounds the L1 residual.
  VectorD mix(d);
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    mix += lp.x[j] * points[j];
    total += lp.x[j];
  }
  if (distance(mix, c) > tol * spread(points) || std::abs(total - 1.0) > tol) return std::nullopt;
  return lp.x;
}

class MoveToFront {
 public:
  MoveToFront(const std::vector<VectorD>& pts, double slack) : pts_(pts), dim_(pts.front().dim()), slack_(slack) {}

  Ball run(std::vector<std::size_t> order) {
    order_.assign(order.begin(), order.end());
    boundary_.clear();
    mtf(order_.end());
    return ball_;
  }

 private:
  void set_ball_from_boundary() {
    ball_.support = boundary_;
    if (boundary_.empty()) {
      ball_.center = VectorD(dim_);
      ball_.radius = -1.0;
      return;
    }
    std::vector<VectorD> b;
    for (std::size_t i : boundary_) b.push_back(pts_[i]);
    if (auto cb = circumball(b)) {
      ball_.center = cb->center;
      ball_.radius = cb->radius;
      return;
    }
    // Affinely dependent boundary (round-off); least-squares center, the
    // verification pass decides whether the result is usable.
    const std::size_t k = b.size() - 1;
    Eigen::MatrixXd m(k, k);
    Eigen::VectorXd rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      const VectorD vi = b[i + 1] - b[0];
      rhs(i) = norm_sq(vi);
      for (std::size_t j = 0; j < k; ++j) m(i, j) = 2.0 * dot(vi, b[j + 1] - b[0]);
    }
    const Eigen::VectorXd alpha = m.completeOrthogonalDecomposition().solve(rhs);
    VectorD c = b[0];
    for (std::size_t j = 0; j < k; ++j) c += alpha(j) * (b[j + 1] - b[0]);
    ball_.center = c;
    ball_.radius = 0.0;
    for (const auto& p : b) ball_.radius = std::max(ball_.radius, distance(p, c));
  }

  bool outside(std::size_t i) const {
    return ball_.radius < 0 || distance(pts_[i], ball_.center) > ball_.radius + slack_;
  }

  void mtf(std::list<std::size_t>::iterator end) {
    set_ball_from_boundary();
    if (boundary_.size() == dim_ + 1) return;
    for (auto it = order_.begin(); it != end;) {
      auto next = std::next(it);
      if (outside(*it)) {
        boundary_.push_back(*it);
        mtf(it);
        boundary_.pop_back();
        order_.splice(order_.begin(), order_, it);
      }
      it = next;
    }
  }

  const std::vector<VectorD>& pts_;
  std::size_t dim_;
  double slack_;
  std::list<std::size_t> order_;
  std::vector<std::size_t> boundary_;
  Ball ball_;
};

}  // namespace

std::optional<Ball> circumball(std::span<const VectorD> points) {
  if (points.empty()) return std::nullopt;
  Ball out;
  const VectorD& p0 = points.front();
  const std::size_t k = points.size() - 1;
  if (k == 0) {
    out.center = p0;
    return out;
  }
  Eigen::MatrixXd m(k, k);
  Eigen::VectorXd rhs(k);
  std::vector<VectorD> v;
  for (std::size_t i = 0; i < k; ++i) v.push_back(points[i + 1] - p0);
  for (std::size_t i = 0; i < k; ++i) {
    rhs(i) = norm_sq(v[i]);
    for (std::size_t j = 0; j < k; ++j) m(i, j) = 2.0 * dot(v[i], v[j]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::VectorXd alpha = lu.solve(rhs);
  VectorD c = p0;
  for (std::size_t j = 0; j < k; ++j) c += alpha(j) * v[j];
  out.center = c;
  for (const auto& p : points) out.radius = std::max(out.radius, distance(p, c));
  return out;
}

bool in_convex_hull(std::span<const VectorD> points, const VectorD& c, double tol) {
  return hull_weights(points, c, tol).has_value();
}

Ball seb(std::span<const VectorD> points, std::uint64_t seed) {
  if (points.size() < 2) throw std::invalid_argument("seb needs at least two points");
  const std::size_t d = points.front().dim();
  for (const auto& p : points)
    if (p.dim() != d) throw DimensionMismatch(d, p.dim());
  const double scale = spread(points);
  const auto keep = distinct_indices(points, 1e-12 * scale);
  if (keep.size() < 2) throw std::invalid_argument("seb: all points coincide");

  std::vector<VectorD> pts;
  for (std::size_t i : keep) pts.push_back(points[i]);
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  MoveToFront solver(pts, 1e-12 * scale);

  const double slack = kBallSlack * scale;
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::shuffle(order.begin(), order.end(), rng);
    Ball ball = solver.run(order);
    if (ball.radius <= 0) continue;

    bool encloses = true;
    std::vector<std::size_t> rim;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double dist = distance(pts[i], ball.center);
      if (dist > ball.radius + slack) encloses = false;
      if (dist >= ball.radius - slack) rim.push_back(i);
    }
    if (!encloses) continue;
    std::vector<VectorD> rim_pts;
    for (std::size_t i : rim) rim_pts.push_back(pts[i]);
    const auto w = hull_weights(rim_pts, ball.center, 1e-9);
    if (!w) continue;
    // A basic solution has at most d+1 positive weights: the witness subset.
    ball.support.clear();
    for (std::size_t k = 0; k < rim.size(); ++k)
      if ((*w)[k] > 0) ball.support.push_back(keep[rim[k]]);
    std::sort(ball.support.begin(), ball.support.end());
    return ball;
  }
  throw std::runtime_error("seb: verification failed after restarts");
}

NormalizedSet normalize(std::span<const VectorD> points, std::uint64_t seed) {
  NormalizedSet out;
  out.ball = seb(points, seed);
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.points.push_back((points[i] - out.ball.center) / out.ball.radius);
    if (norm(out.points.back()) >= 1.0 - kBallSlack) out.boundary.push_back(i);
  }
  return out;
}

ApproxTrace bc_approximate(std::span<const VectorD> points, std::size_t steps, TiePolicy policy, std::uint64_t seed) {
  ApproxTrace tr;
  tr.points.assign(points.begin(), points.end());
  tr.ball = seb(points, seed);
  const VectorD& c = tr.ball.center;
  const double r = tr.ball.radius;
  const std::size_t d = c.dim();
  const double tie_tol = kFloatTieTolerance * r * r;

  TieBreaker breaker(policy, seed);
  VectorD ci(d), u(d);
  tr.steps.reserve(steps + 1);
  for (std::size_t i = 0;; ++i) {
    ApproxStep st;
    st.center = ci;
    st.err = distance(c, ci) / r;
    st.residual = norm(r * u - static_cast<double>(i) * (ci - c));
    if (i == steps) {
      tr.steps.push_back(std::move(st));
      break;
    }
    std::vector<double> dist_sq(points.size());
    double best = -1.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
      dist_sq[j] = norm_sq(points[j] - ci);
      best = std::max(best, dist_sq[j]);
    }
    for (std::size_t j = 0; j < points.size(); ++j)
      if (dist_sq[j] >= best - tie_tol) st.ties.push_back(j);
    const VectorD offset = static_cast<double>(i) * (ci - c);
    const std::size_t j = breaker.pick(st.ties, [&](std::size_t k) { return norm_sq(offset + points[k] - c); });
    st.chosen = j;
    ci += (points[j] - ci) / static_cast<double>(i + 1);
    u += (points[j] - c) / r;
    tr.steps.push_back(std::move(st));
  }
  return tr;
}

RelationReport relation_check(const ApproxTrace& trace, const Ball& ball) {
  RelationReport rep;
  const VectorD& c = ball.center;
  const double r = ball.radius;
  std::vector<VectorD> xt;
  for (const auto& y : trace.points) xt.push_back((y - c) / r);
  VectorD u(c.dim());
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& st = trace.steps[i];
    const double res = norm(r * u - static_cast<double>(i) * (st.center - c));
    rep.max_residual = std::max(rep.max_residual, res);
    if (!st.chosen) break;
    if (i >= 1 && !rep.divergence) {
      double lo = dot(xt.front(), u);
      for (const auto& x : xt) lo = std::min(lo, dot(x, u));
      if (dot(xt[*st.chosen], u) > lo + kFloatTieTolerance * static_cast<double>(i)) rep.divergence = i;
    }
    u += xt[*st.chosen];
  }
  return rep;
}

std::optional<std::size_t> interior_absorption_index(std::span<const VectorD> points, const ApproxTrace& trace) {
  const auto ns = normalize(points);
  std::vector<bool> on_rim(points.size(), false);
  for (std::size_t i : ns.boundary) on_rim[i] = true;
  std::optional<std::size_t> last_interior;
  std::size_t last_step = 0;
  bool any = false;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& ch = trace.steps[i].chosen;
    if (!ch) continue;
    any = true;
    last_step = i;
    if (!on_rim[*ch]) last_interior = i;
  }
  if (!last_interior) return 0;
  if (!any || *last_interior == last_step) return std::nullopt;
  return *last_interior + 1;
}

void write_approx_csv(std::ostream& out, const ApproxTrace& trace, std::optional<double> ustar) {
  out << "i,err_i,bound_sqrt,bound_lin,residual\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& st = trace.steps[i];
    out << i << ',' << format_double(st.err) << ',';
    if (i > 0) out << format_double(1.0 / std::sqrt(static_cast<double>(i)));
    out << ',';
    if (i > 0 && ustar) out << format_double(*ustar / static_cast<double>(i));
    out << ',' << format_double(st.residual) << '\n';
  }
}

}  // namespace fpi
