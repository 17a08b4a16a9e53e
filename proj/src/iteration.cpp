#include "fpi/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "fpi/polar.hpp"

namespace fpi {

std::string_view to_string(TiePolicy p) {
  switch (p) {
    case TiePolicy::LowestIndex:
      return "lowest";
    case TiePolicy::Random:
      return "random";
    case TiePolicy::Greedy:
      return "greedy";
  }
  return "lowest";
}

TiePolicy parse_policy(std::string_view s) {
  if (s == "lowest" || s == "lowest-index") return TiePolicy::LowestIndex;
  if (s == "random") return TiePolicy::Random;
  if (s == "greedy" || s == "adversarial") return TiePolicy::Greedy;
  throw std::invalid_argument("unknown tie policy: " + std::string(s));
}

StepResult<double> farthest_step(const PointSet& ps, const VectorD& u, double tie_tol) {
  return farthest_step<double>(std::span<const VectorD>(ps.points()), u, tie_tol);
}

namespace {

IterationTrace run_float(const PointSet& ps, std::size_t steps, const IterationOptions& opts) {
  IterationTrace trace;
  trace.mode = NumericMode::Float;
  trace.steps.reserve(steps + 1);
  TieBreaker breaker(opts.policy, opts.seed);
  VectorD u(ps.dim());
  for (std::size_t i = 0; i <= steps; ++i) {
    TraceStep st;
    st.u = u;
    st.norm = norm(u);
    trace.max_norm = std::max(trace.max_norm, st.norm);
    if (i < steps) {
      auto res = farthest_step(ps, u, opts.tie_tol);
      const std::size_t j = breaker.pick(res.ties, [&](std::size_t k) {
        const VectorD w = u + ps[k];
        double ahead = 0.0;
        for (const auto& next : farthest_step(ps, w, opts.tie_tol).successors) ahead = std::max(ahead, norm_sq(next));
        return std::pair{norm_sq(w), ahead};
      });
      st.ties = std::move(res.ties);
      st.chosen = j;
      st.chi = ps[j];
      u += ps[j];
    }
    trace.steps.push_back(std::move(st));
  }
  return trace;
}

// Exact mode: track s_j = <x_j, u> and ||u||^2 from the Gram matrix.
IterationTrace run_exact(const PointSet& ps, std::size_t steps, const IterationOptions& opts) {
  const auto& g = *ps.exact_gram();
  const std::size_t n = ps.size();
  IterationTrace trace;
  trace.mode = NumericMode::Rational;
  trace.steps.reserve(steps + 1);
  TieBreaker breaker(opts.policy, opts.seed);

  std::vector<Rational> s(n, Rational(0));
  Rational nsq(0);
  Rational max_sq(0);
  VectorD u(ps.dim());
  for (std::size_t i = 0; i <= steps; ++i) {
    TraceStep st;
    st.u = u;
    st.norm = std::sqrt(to_double(nsq));
    if (nsq > max_sq) max_sq = nsq;
    if (i < steps) {
      Rational lo = s[0];
      for (const auto& v : s)
        if (v < lo) lo = v;
      for (std::size_t j = 0; j < n; ++j)
        if (s[j] == lo) st.ties.push_back(j);
      const std::size_t j = breaker.pick(st.ties, [&](std::size_t k) {
        const Rational next = nsq + 2 * s[k] + g(k, k);
        std::vector<Rational> s2(n);
        for (std::size_t m = 0; m < n; ++m) s2[m] = s[m] + g(k, m);
        const Rational lo2 = *std::min_element(s2.begin(), s2.end());
        Rational ahead = next;
        for (std::size_t m = 0; m < n; ++m)
          if (s2[m] == lo2) ahead = std::max<Rational>(ahead, next + 2 * s2[m] + g(m, m));
        return std::pair{next, ahead};
      });
      st.chosen = j;
      st.chi = ps[j];
      nsq += 2 * s[j] + g(j, j);
      for (std::size_t k = 0; k < n; ++k) s[k] += g(j, k);
      u += ps[j];
    }
    trace.steps.push_back(std::move(st));
  }
  trace.max_norm_sq = max_sq;
  trace.max_norm = std::sqrt(to_double(max_sq));
  return trace;
}

}  // namespace

IterationTrace run_iteration(const PointSet& ps, std::size_t steps, const IterationOptions& opts) {
  require_valid(ps);
  if (ps.mode() == NumericMode::Rational) return run_exact(ps, steps, opts);
  return run_float(ps, steps, opts);
}

bool law_of_cosines_check(const IterationTrace& trace, double tol) {
  for (std::size_t j = 1; j < trace.steps.size(); ++j) {
    const auto& prev = trace.steps[j - 1];
    if (prev.u.dim() != 2) throw std::invalid_argument("law of cosines check needs a planar trace");
    if (!prev.chosen || prev.chi.dim() != 2) return false;
    const double lam_prev = prev.norm;
    if (lam_prev <= 1e-12) continue;  // gamma undefined at u = 0
    const double gamma = angle_between(prev.u, prev.chi);
    const double lam = trace.steps[j].norm;
    const double rhs = 1.0 + 2.0 * lam_prev * std::cos(gamma) + lam_prev * lam_prev;
    if (std::abs(lam * lam - rhs) > tol * std::max(1.0, rhs)) return false;
  }
  return true;
}

void write_trace_jsonl(std::ostream& out, const IterationTrace& trace) {
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& st = trace.steps[i];
    nlohmann::json line;
    line["i"] = i;
    line["u"] = std::vector<double>(st.u.begin(), st.u.end());
    line["chosen"] = st.chosen ? nlohmann::json(*st.chosen) : nlohmann::json(nullptr);
    line["ties"] = st.ties;
    line["norm"] = st.norm;
    out << line.dump() << '\n';
  }
}

}  // namespace fpi
