#include "fpi/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "fpi/balance.hpp"
#include "fpi/polar.hpp"

namespace fpi {

namespace {

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

void check_phi(double phi) {
  if (!(phi > 0.0 && phi < kPi / 2)) throw ParameterError("phi must lie in (0, pi/2), got " + fmt(phi));
}

// Largest x in (lo, hi) with f(x) >= 0, for f decreasing in x and f(lo) >= 0.
double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi) {
  if (f(lo) < 0) throw InfeasibleTarget("target not reachable for any admissible parameter");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= 0 ? lo : hi) = mid;
  }
  return lo;
}

// Embeds `p` at coordinate offset `at` of a d-vector.
VectorD embed(std::size_t d, std::size_t at, const VectorD& p) {
  VectorD out(d);
  for (std::size_t k = 0; k < p.dim(); ++k) out[at + k] = p[k];
  return out;
}

}  // namespace

std::vector<VectorD> equidistant_points(std::size_t l) {
  if (l == 0) throw ParameterError("equidistant points need l >= 1");
  std::vector<VectorD> pts{VectorD{1.0}, VectorD{-1.0}};
  double s = -1.0;
  for (std::size_t dim = 2; dim <= l; ++dim) {
    const double next = s / (1.0 - s);
    const double cos_a = std::sqrt(1.0 - next * next);
    std::vector<VectorD> lifted;
    VectorD top(dim);
    top[dim - 1] = 1.0;
    lifted.push_back(top);
    for (const auto& p : pts) {
      VectorD q(dim);
      for (std::size_t k = 0; k + 1 < dim; ++k) q[k] = p[k] * cos_a;
      q[dim - 1] = next;
      lifted.push_back(q);
    }
    pts = std::move(lifted);
    s = next;
  }
  return pts;
}

PointSet equidistant(std::size_t l, NumericMode mode) {
  auto pts = equidistant_points(l);
  if (mode == NumericMode::Float) return PointSet::from_float(l, std::move(pts));
  if (l == 1) return PointSet::from_rational(1, {VectorQ{Rational(1)}, VectorQ{Rational(-1)}});
  GramMatrix g(l + 1, l + 1);
  const Rational off(-1, static_cast<long>(l));
  for (std::size_t i = 0; i <= l; ++i)
    for (std::size_t j = 0; j <= l; ++j) g(i, j) = i == j ? Rational(1) : off;
  return PointSet::with_exact_gram(l, std::move(pts), std::move(g));
}

PointSet family_A(std::size_t d, std::size_t m, NumericMode mode) {
  if (d < 2 || m < 1 || m > d) throw ParameterError("A_{d,m} needs d >= 2 and 1 <= m <= d");
  std::vector<VectorQ> pts;
  for (std::size_t i = 0; i < d; ++i) pts.push_back(unit_vector<Rational>(d, i));
  for (std::size_t i = 0; i < m; ++i) pts.push_back(-unit_vector<Rational>(d, i));
  if (mode == NumericMode::Rational) return PointSet::from_rational(d, std::move(pts));
  std::vector<VectorD> f;
  for (const auto& p : pts) f.push_back(to_float(p));
  return PointSet::from_float(d, std::move(f));
}

double b_sigma(std::size_t c, double epsilon) {
  const double ce = std::cos(epsilon);
  return 1.0 - static_cast<double>(c) / static_cast<double>(c - 1) * ce * ce;
}

double b_epsilon_max(std::size_t c) {
  return std::acos(std::sqrt(static_cast<double>(c - 1) / static_cast<double>(c)));
}

PointSet family_B(std::size_t d, std::size_t b, double epsilon, double phi) {
  if (d < 3 || b < 1 || b + 2 > d) throw ParameterError("B_{d,b} needs d >= 3 and 1 <= b <= d-2");
  check_phi(phi);
  const std::size_t c = d - b;
  const double eps_max = b_epsilon_max(c);
  if (!(epsilon > 0.0 && epsilon < eps_max))
    throw ParameterError("B_{" + std::to_string(d) + "," + std::to_string(b) + "} needs epsilon in (0, " +
                         fmt(eps_max) + ") so that -1/(c-1) < sigma < 0; got " + fmt(epsilon));
  const auto bar = equidistant_points(c - 1);  // c points in the hyperplane V
  VectorD v(d);
  v[d - 1] = 1.0;
  std::vector<VectorD> xbar;
  for (const auto& p : bar) xbar.push_back(embed(d, b, p));

  std::vector<VectorD> pts;
  pts.push_back(-std::cos(phi) * xbar[0] + std::sin(phi) * v);
  for (const auto& xb : xbar) pts.push_back(std::cos(epsilon) * xb + std::sin(epsilon) * v);
  if (b == 1) {
    pts.push_back(unit_vector<double>(d, 0));
    pts.push_back(-unit_vector<double>(d, 0));
  } else {
    for (const auto& p : equidistant_points(b)) pts.push_back(embed(d, 0, p));
  }
  return PointSet::from_float(d, std::move(pts));
}

PointSet family_C(std::size_t d, double epsilon, double mu, double phi) {
  if (d < 3) throw ParameterError("C_d needs d >= 3");
  check_phi(phi);
  if (!(epsilon >= 0.0 && mu > epsilon))
    throw ParameterError("C_d needs mu > epsilon >= 0; got epsilon=" + fmt(epsilon) + ", mu=" + fmt(mu));
  VectorD v(d);
  v[d - 1] = 1.0;
  std::vector<VectorD> xbar;
  for (const auto& p : equidistant_points(d - 1)) xbar.push_back(embed(d, 0, p));
  std::vector<VectorD> pts;
  pts.push_back(std::cos(phi) * xbar[0] + std::sin(phi) * v);
  for (const auto& xb : xbar) pts.push_back(std::cos(epsilon) * xb - std::sin(epsilon) * v);
  pts.push_back(-std::cos(mu) * xbar[0] + std::sin(mu) * v);
  return PointSet::from_float(d, std::move(pts));
}

BCeilings b_max_feasible_i(std::size_t d, std::size_t b, double epsilon, double phi) {
  const std::size_t c = d - b;
  const double se = std::sin(epsilon), sig = b_sigma(c, epsilon);
  const double denom = static_cast<double>(c) * se * se;
  BCeilings out;
  out.a1 = (std::cos(phi) - std::sin(phi) * se) / denom;
  out.a2 = (sig * (std::cos(phi) - static_cast<double>(c - 1)) - std::sin(phi) * se) / denom;
  out.in_block = (sig * (std::cos(phi) - 1.0) - std::sin(phi) * se) / denom;
  return out;
}

BMBounds b_m_bounds(std::size_t d, std::size_t b, double epsilon, double phi) {
  const std::size_t c = d - b;
  const double se2 = std::pow(std::sin(epsilon), 2), cp = std::cos(phi), sig = b_sigma(c, epsilon);
  BMBounds out;
  out.a1 = cp * cp * (1.0 + 1.0 / se2);
  out.a2 = std::pow(sig * (cp - static_cast<double>(c - 1)), 2) / se2 + cp * cp;
  out.in_block = std::pow(sig * (cp - 1.0), 2) / se2 + cp * cp;
  return out;
}

double BMBounds::min() const { return std::min({a1, a2, in_block}); }

double b_norm_sq(std::size_t d, std::size_t b, double epsilon, double phi, std::size_t k) {
  const double kc = static_cast<double>(k) * static_cast<double>(d - b), se = std::sin(epsilon);
  return 1.0 + kc * kc * se * se + 2.0 * kc * se * std::sin(phi);
}

std::size_t b_steps_for_target(std::size_t d, std::size_t b, double epsilon, double phi, double m) {
  const auto bounds = b_m_bounds(d, b, epsilon, phi);
  if (m > bounds.min())
    throw InfeasibleTarget("M = " + fmt(m) + " exceeds the M-bounds (" + fmt(bounds.a1) + ", " + fmt(bounds.a2) + ", " + fmt(bounds.in_block) +
                           ") for epsilon = " + fmt(epsilon));
  if (m <= 1.0) return 0;
  const double sp = std::sin(phi);
  const double k = (std::sqrt(sp * sp - 1.0 + m) - sp) / (static_cast<double>(d - b) * std::sin(epsilon));
  auto out = static_cast<std::size_t>(std::max(0.0, std::ceil(k - 1e-12)));
  while (b_norm_sq(d, b, epsilon, phi, out) < m) ++out;
  return out;
}

double b_epsilon_for_target(std::size_t d, std::size_t b, double phi, double m, double margin) {
  const double hi = b_epsilon_max(d - b);
  return bisect_decreasing([&](double e) { return b_m_bounds(d, b, e, phi).min() - margin * m; }, 1e-9, hi);
}

double c_max_feasible_i(double epsilon, double mu, double phi) {
  return (std::cos(phi) - std::cos(epsilon)) / (std::cos(mu) - std::cos(epsilon));
}

double c_m_bound(double epsilon, double mu, double phi) {
  const double a = std::cos(epsilon) - std::cos(phi);
  const double h = std::sin(0.5 * (mu + epsilon));
  const double s = std::sin(phi + 0.5 * (mu + epsilon));
  return a * a / (h * h) + 2.0 * a * s / h + 1.0;
}

double c_norm_sq(double epsilon, double mu, double phi, std::size_t k) {
  const double kk = static_cast<double>(k);
  return 1.0 + 2.0 * kk * (std::cos(phi + epsilon) - std::cos(phi + mu)) + 2.0 * kk * kk * (1.0 - std::cos(mu - epsilon));
}

std::size_t c_steps_for_target(double epsilon, double mu, double phi, double m) {
  const double bound = c_m_bound(epsilon, mu, phi);
  if (m > bound) throw InfeasibleTarget("M = " + fmt(m) + " exceeds the M-bound " + fmt(bound));
  if (m <= 1.0) return 0;
  const double s = std::sin(phi + 0.5 * (mu + epsilon));
  const double k = (std::sqrt(s * s + m - 1.0) - s) / (2.0 * std::sin(0.5 * (mu - epsilon)));
  auto out = static_cast<std::size_t>(std::max(0.0, std::ceil(k - 1e-12)));
  while (c_norm_sq(epsilon, mu, phi, out) < m) ++out;
  return out;
}

double c_mu_for_target(double epsilon, double phi, double m, double margin) {
  // The bound decreases in mu from +inf (mu -> epsilon) while cos(epsilon) > cos(phi).
  return bisect_decreasing([&](double mu) { return c_m_bound(epsilon, mu, phi) - margin * m; }, epsilon + 1e-9,
                           kPi / 2);
}

double c_epsilon_for_target_3eps(double phi, double m, double margin) {
  return bisect_decreasing([&](double e) { return c_m_bound(e, 3.0 * e, phi) - margin * m; }, 1e-9, phi);
}

std::vector<std::size_t> a_schedule(std::size_t d, std::size_t m) {
  std::vector<std::size_t> s;
  for (std::size_t i = m; i < d; ++i) s.push_back(i);
  s.push_back(d);  // -e_1
  return s;
}

std::vector<std::size_t> b_schedule(std::size_t d, std::size_t b, std::size_t blocks) {
  const std::size_t c = d - b;
  std::vector<std::size_t> s{0};
  for (std::size_t i = 0; i < blocks; ++i)
    for (std::size_t j = 1; j <= c; ++j) s.push_back(j);
  return s;
}

std::vector<std::size_t> c_schedule(std::size_t d, std::size_t k) {
  std::vector<std::size_t> s{0};
  for (std::size_t i = 0; i < k; ++i) {
    s.push_back(d + 1);
    s.push_back(1);
  }
  return s;
}

namespace {

std::string condition_label(ScheduleFamily family, std::size_t n, std::size_t prescribed, std::size_t preferred) {
  switch (family) {
    case ScheduleFamily::Generic:
    case ScheduleFamily::A:
    case ScheduleFamily::B:
      return "prescribed point not a farthest point";
    case ScheduleFamily::C: {
      const std::size_t d = n - 2;
      if (preferred == 0) return "(a) x_0 strictly preferred";
      const bool pair = (preferred == 1 || preferred == d + 1) && (prescribed == 1 || prescribed == d + 1);
      if (pair) return "(b) x_1/x_{d+1} comparison";
      return "(c) x_m with 2 <= m <= d preferred";
    }
  }
  return "";
}

std::string b_label(std::size_t c, std::size_t preferred) {
  if (preferred == 0) return "(c) x_0 strictly preferred";
  if (preferred <= c) return "(b) another tilted point preferred";
  return "(a) product with the prescribed point is positive";
}

std::vector<ScheduleViolation> replay(const PointSet& ps, const std::vector<std::size_t>& schedule,
                                      ScheduleFamily family, double tie_tol, bool stop_at_first,
                                      ScheduleReport* report) {
  require_valid(ps);
  const auto& pts = ps.points();
  // Tilted points x_1..x_c are the ones after x_0 with a component along v.
  std::size_t c = 0;
  if (family == ScheduleFamily::B) {
    const std::size_t d = ps.dim();
    for (std::size_t j = 1; j < pts.size(); ++j)
      if (std::abs(pts[j][d - 1]) > 1e-15) c = j;
  }
  std::vector<ScheduleViolation> out;
  VectorD u(ps.dim());
  double max_norm = 0.0;
  std::size_t legal = 0;
  for (std::size_t t = 0; t < schedule.size(); ++t) {
    const std::size_t p = schedule[t];
    if (p >= pts.size()) throw std::invalid_argument("schedule index out of range");
    std::size_t arg = 0;
    double lo = dot(pts[0], u);
    for (std::size_t j = 1; j < pts.size(); ++j) {
      const double v = dot(pts[j], u);
      if (v < lo) {
        lo = v;
        arg = j;
      }
    }
    if (dot(pts[p], u) > lo + tie_tol) {
      ScheduleViolation v{t, p, arg, ""};
      v.condition = family == ScheduleFamily::B ? b_label(c, arg) : condition_label(family, pts.size(), p, arg);
      out.push_back(v);
      if (stop_at_first) break;
    } else if (out.empty()) {
      ++legal;
    }
    u += pts[p];
    if (out.empty()) max_norm = std::max(max_norm, norm(u));
  }
  if (report) {
    report->ok = out.empty();
    if (!out.empty()) report->first_violation = out.front();
    report->legal_steps = legal;
    report->max_norm = max_norm;
    VectorD w(ps.dim());
    for (std::size_t t = 0; t < legal; ++t) w += pts[schedule[t]];
    report->final_norm = norm(w);
  }
  return out;
}

}  // namespace

ScheduleReport verify_prescribed_schedule(const PointSet& ps, const std::vector<std::size_t>& schedule,
                                          ScheduleFamily family, double tie_tol) {
  ScheduleReport rep;
  replay(ps, schedule, family, tie_tol, true, &rep);
  return rep;
}

std::vector<ScheduleViolation> schedule_violations(const PointSet& ps, const std::vector<std::size_t>& schedule,
                                                   ScheduleFamily family, double tie_tol) {
  return replay(ps, schedule, family, tie_tol, false, nullptr);
}

PointSet random_balanced(std::size_t d, std::size_t n, std::uint64_t seed, std::size_t budget) {
  if (n < d + 1) throw ParameterError("a balanced set in R^d needs n >= d+1 points");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    std::vector<VectorD> pts;
    for (std::size_t i = 0; i < n; ++i) {
      VectorD p(d);
      for (std::size_t k = 0; k < d; ++k) p[k] = gauss(rng);
      pts.push_back(p / norm(p));
    }
    auto ps = PointSet::from_float(d, std::move(pts));
    if (!validate(ps).usable()) continue;
    if (classify_balance(ps).b == d) return ps;
  }
  throw std::runtime_error("random_balanced: resampling budget exhausted");
}

Perturbed perturb(const PointSet& ps, double magnitude, std::uint64_t seed) {
  if (magnitude == 0.0) return {ps, classify_balance(ps).b};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<VectorD> pts;
  for (const auto& p : ps.points()) {
    VectorD q = p;
    for (std::size_t k = 0; k < q.dim(); ++k) q[k] += magnitude * gauss(rng);
    pts.push_back(q / norm(q));
  }
  Perturbed out{PointSet::from_float(ps.dim(), std::move(pts)), 0};
  out.b = classify_balance(out.set).b;
  return out;
}

PointSet rotate_point(const PointSet& ps, std::size_t index, double angle) {
  if (ps.dim() != 2) throw std::invalid_argument("rotate_point is planar only");
  auto pts = ps.points();
  pts.at(index) = rotate_2d(pts[index], angle);
  return PointSet::from_float(2, std::move(pts));
}

}  // namespace fpi
