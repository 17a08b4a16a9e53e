#include "fpi/planar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fpi/balance.hpp"
#include "fpi/parallel.hpp"
#include "fpi/polar.hpp"

namespace fpi {

namespace {

constexpr double kTwoThirdsPi = 2.0 * kPi / 3.0;

void require_planar(const PointSet& ps) {
  if (ps.dim() != 2) throw std::invalid_argument("planar routines need d = 2");
}

std::vector<double> point_angles(const PointSet& ps) {
  std::vector<double> out;
  for (const auto& p : ps.points()) out.push_back(to_polar(p).phi);
  return out;
}

std::vector<std::size_t> ccw_order(const std::vector<double>& angles) {
  std::vector<std::size_t> order(angles.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return angles[a] < angles[b]; });
  return order;
}

}  // namespace

VectorD BaseGapFrame::to_frame(const VectorD& v) const { return rotate_2d(v, rotation); }

std::vector<std::pair<std::size_t, double>> angular_gaps(const PointSet& ps) {
  require_planar(ps);
  const auto angles = point_angles(ps);
  const auto order = ccw_order(angles);
  std::vector<std::pair<std::size_t, double>> gaps;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t a = order[k], b = order[(k + 1) % order.size()];
    double g = ccw_distance(angles[a], angles[b]);
    if (order.size() == 1) g = kTwoPi;
    gaps.emplace_back(a, g);
  }
  return gaps;
}

BaseGapFrame base_gap_frame(const PointSet& ps, std::optional<std::size_t> gap_start) {
  require_planar(ps);
  const auto angles = point_angles(ps);
  const auto order = ccw_order(angles);
  const auto gaps = angular_gaps(ps);

  std::size_t pick = 0;
  if (gap_start) {
    auto it = std::find_if(gaps.begin(), gaps.end(), [&](const auto& g) { return g.first == *gap_start; });
    if (it == gaps.end()) throw std::invalid_argument("no gap starts at the requested point");
    pick = static_cast<std::size_t>(it - gaps.begin());
  } else {
    for (std::size_t k = 1; k < gaps.size(); ++k)
      if (gaps[k].second > gaps[pick].second + 1e-12) pick = k;
  }
  const double g = gaps[pick].second;
  if (g > kPi + 1e-12) throw std::invalid_argument("0-balanced set: a gap exceeds pi, no base-gap frame exists");

  BaseGapFrame f;
  f.phi = std::max(0.0, 0.5 * (kPi - g));
  f.gap_start = gaps[pick].first;
  f.rotation = reduce_angle(kPi + f.phi - angles[f.gap_start]);
  for (std::size_t k = 1; k <= order.size(); ++k) f.permutation.push_back(order[(pick + k) % order.size()]);
  return f;
}

RegionSpec::RegionSpec(double phi_)
    : phi(phi_), phibar(kPi / 6.0 - phi_), lambda_min(std::sqrt(3.0) / (2.0 * std::cos(phi_))) {}

VectorD RegionSpec::x1() const { return VectorD{std::cos(phi), -std::sin(phi)}; }
VectorD RegionSpec::xn() const { return VectorD{-std::cos(phi), -std::sin(phi)}; }

std::vector<std::string> RegionTags::names() const {
  std::vector<std::string> out;
  if (T) out.push_back("T");
  if (R) out.push_back("R");
  if (Q) out.push_back("Q");
  if (P) out.push_back("P");
  if (Pplus) out.push_back("P+");
  if (Pminus) out.push_back("P-");
  if (TnPplus) out.push_back("Tn(P+)");
  if (T1Pminus) out.push_back("T1(P-)");
  if (U) out.push_back("U");
  return out;
}

namespace {

struct Disk {
  bool P, Pplus, Pminus;
};

Disk p_tags(const RegionSpec& s, const VectorD& u, double slack) {
  const double a = u[0], b = u[1];
  const bool p = norm(u) <= 1.0 + slack && b > std::abs(a) * std::tan(s.phi) + s.lambda_min - slack;
  return {p, p && a >= -slack, p && a <= slack};
}

}  // namespace

RegionTags region_membership(const RegionSpec& spec, const VectorD& u, double slack) {
  if (u.dim() != 2) throw DimensionMismatch(2, u.dim());
  RegionTags t;
  const double a = u[0], b = u[1], r = norm(u);
  const double low = std::abs(a) * std::tan(spec.phi);
  t.Q = b >= low - slack && b <= low + spec.lambda_min + slack;
  t.R = r > 0.0 && b < low + slack;
  const auto p = p_tags(spec, u, slack);
  t.P = p.P;
  t.Pplus = p.Pplus;
  t.Pminus = p.Pminus;
  t.TnPplus = p_tags(spec, u - spec.xn(), slack).Pplus;
  t.T1Pminus = p_tags(spec, u - spec.x1(), slack).Pminus;
  if (r > 1.0 - slack && r <= std::sqrt(2.0) + slack) {
    const double ang = std::atan2(b, a);
    t.T = ang > kPi / 2 - spec.phibar - slack && ang < kPi / 2 + spec.phibar + slack;
  }
  t.U = t.P || t.TnPplus || t.T1Pminus || t.Q || t.R;
  return t;
}

std::vector<AuditViolation> lemma_membership_audit(const PointSet& ps, const IterationTrace& trace, double slack) {
  require_planar(ps);
  std::vector<AuditViolation> out;
  bool framed = false;
  for (const auto& [start, size] : angular_gaps(ps)) {
    if (size <= kTwoThirdsPi) continue;
    framed = true;
    const auto frame = base_gap_frame(ps, start);
    const RegionSpec spec(frame.phi);
    std::vector<VectorD> us;
    for (const auto& st : trace.steps) us.push_back(frame.to_frame(st.u));

    auto report = [&](std::size_t j, const char* claim) { out.push_back({0, start, j, claim, us[j]}); };
    for (std::size_t j = 0; j < us.size(); ++j) {
      const auto loose = region_membership(spec, us[j], slack);
      if (!loose.U) report(j, "u_j in U");
      if (j == 0 || j + 1 >= us.size()) continue;
      const auto now = region_membership(spec, us[j], 0.0);
      const auto next = region_membership(spec, us[j + 1], slack);
      const bool pqr = next.P || next.Q || next.R;
      if (now.Q && !(next.Q || next.R)) report(j, "(a) Q -> Q u R");
      if (now.P && !(next.TnPplus || next.T1Pminus)) report(j, "(b) P -> Tn(P+) u T1(P-)");
      if (now.R && !pqr) report(j, "(c) R -> P u Q u R");
      if (now.TnPplus && !pqr) report(j, "(d) Tn(P+) -> P u Q u R");
      if (now.T1Pminus && !pqr) report(j, "(e) T1(P-) -> P u Q u R");
    }
  }
  if (!framed) throw std::invalid_argument("lemma audit needs a gap larger than 2pi/3 (phi < pi/6)");
  return out;
}

std::vector<AuditViolation> gamma_bound_audit(const PointSet& ps, const IterationTrace& trace, double tol) {
  const auto frame = base_gap_frame(ps);
  std::vector<AuditViolation> out;
  for (std::size_t j = 0; j < trace.steps.size(); ++j) {
    const auto& st = trace.steps[j];
    if (!st.chosen || st.norm <= 1e-12) continue;
    if (angle_between(st.u, st.chi) < kPi / 2 + frame.phi - tol) out.push_back({0, frame.gap_start, j, "gamma", st.u});
  }
  return out;
}

void require_in_T(const RegionSpec& spec, const VectorD& u) {
  if (!region_membership(spec, u).T) throw std::invalid_argument("sample is not a point of T");
}

std::vector<VectorD> sample_T(const RegionSpec& spec, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = kPi / 2 - spec.phibar, width = 2.0 * spec.phibar;
  std::vector<VectorD> out;
  out.reserve(samples);
  while (out.size() < samples) {
    const double r = 1.0 + (std::sqrt(2.0) - 1.0) * (1.0 - unit(rng));
    const double ang = lo + width * unit(rng);
    const VectorD u = from_polar(PolarPoint(r, ang));
    if (region_membership(spec, u).T) out.push_back(u);
  }
  return out;
}

std::vector<VectorD> disjointness_check_points(const RegionSpec& spec, const std::vector<VectorD>& points) {
  std::vector<VectorD> hits;
  for (const auto& u : points) {
    require_in_T(spec, u);
    if (region_membership(spec, u).U) hits.push_back(u);
  }
  return hits;
}

DisjointReport disjointness_audit(const RegionSpec& spec, std::size_t samples, std::uint64_t seed) {
  if (!(spec.phi >= 0.0 && spec.phi < kPi / 6)) throw std::invalid_argument("disjointness audit needs 0 <= phi < pi/6");
  DisjointReport rep;
  rep.samples = samples;
  rep.in_U = disjointness_check_points(spec, sample_T(spec, samples, seed));

  // P+ in polar form: delta in [pi/2 - phibar, pi/2], sqrt3/(2 sin(delta - phi)) <= lambda <= 1.
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double bound = kPi / 2 + spec.phibar;
  for (std::size_t k = 0; k < samples; ++k) {
    const double delta = kPi / 2 - spec.phibar * unit(rng);
    const double lam_lo = std::sqrt(3.0) / (2.0 * std::sin(delta - spec.phi));
    if (lam_lo > 1.0) continue;
    const double lam = lam_lo + (1.0 - lam_lo) * unit(rng);
    const VectorD t = from_polar(PolarPoint(lam, delta)) + spec.xn();
    if (std::atan2(t[1], t[0]) < bound - 1e-12) rep.angle_failures.push_back(t);
  }
  return rep;
}

Sqrt2Report sqrt2_bound_audit(const std::vector<PointSet>& corpus, std::size_t steps,
                              const std::vector<TiePolicy>& policies, std::uint64_t seed, unsigned threads) {
  struct Item {
    double max_norm = 0.0;
    std::vector<AuditViolation> violations;
  };
  std::vector<Item> items(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t s) {
    const auto& ps = corpus[s];
    require_planar(ps);
    if (classify_balance(ps).b == 0) throw std::invalid_argument("sqrt2 audit: corpus set is 0-balanced");
    for (std::size_t k = 0; k < policies.size(); ++k) {
      const auto tr = run_iteration(ps, steps, {policies[k], seed + 7919 * s + k});
      items[s].max_norm = std::max(items[s].max_norm, tr.max_norm);
      if (tr.max_norm > std::sqrt(2.0) + 1e-9)
        for (std::size_t j = 0; j < tr.steps.size(); ++j)
          if (tr.steps[j].norm > std::sqrt(2.0) + 1e-9) {
            items[s].violations.push_back({s, 0, j, std::string(to_string(policies[k])), tr.steps[j].u});
            break;
          }
    }
  });
  Sqrt2Report rep;
  for (std::size_t s = 0; s < items.size(); ++s) {
    if (items[s].max_norm > rep.max_norm) {
      rep.max_norm = items[s].max_norm;
      rep.witness = s;
    }
    for (auto& v : items[s].violations) rep.violations.push_back(std::move(v));
  }
  return rep;
}

PointSet random_planar(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("a planar set that is not 0-balanced needs n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  while (true) {
    std::vector<VectorD> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(from_polar(PolarPoint(1.0, ang(rng))));
    auto ps = PointSet::from_float(2, std::move(pts));
    if (!validate(ps).usable()) continue;
    double g = 0.0;
    for (const auto& gap : angular_gaps(ps)) g = std::max(g, gap.second);
    if (g <= kPi) return ps;
  }
}

PointSet random_gapped_planar(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_gapped_planar needs n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    const double gap = kTwoThirdsPi + (kPi - kTwoThirdsPi) * unit(rng);
    const double start = kTwoPi * unit(rng);
    std::vector<VectorD> pts{from_polar(PolarPoint(1.0, start)), from_polar(PolarPoint(1.0, start + gap))};
    for (std::size_t i = 2; i < n; ++i)
      pts.push_back(from_polar(PolarPoint(1.0, start + gap + (kTwoPi - gap) * unit(rng))));
    std::shuffle(pts.begin(), pts.end(), rng);
    auto ps = PointSet::from_float(2, std::move(pts));
    if (!validate(ps).usable()) continue;
    double g = 0.0;
    for (const auto& gp : angular_gaps(ps)) g = std::max(g, gp.second);
    if (g <= kPi && g > kTwoThirdsPi) return ps;
  }
}

PointSet regular_polygon(std::size_t m, double offset) {
  if (m < 3) throw std::invalid_argument("regular polygon needs m >= 3");
  std::vector<VectorD> pts;
  for (std::size_t k = 0; k < m; ++k)
    pts.push_back(from_polar(PolarPoint(1.0, offset + kTwoPi * static_cast<double>(k) / static_cast<double>(m))));
  return PointSet::from_float(2, std::move(pts));
}

nlohmann::json to_json(const AuditViolation& v) {
  return {{"set", v.set},
          {"frame", v.frame},
          {"step", v.step},
          {"claim", v.claim},
          {"u", std::vector<double>(v.u.begin(), v.u.end())}};
}

}  // namespace fpi
