#include "fpi/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fpi/balance.hpp"
#include "fpi/parallel.hpp"
#include "fpi/polar.hpp"

namespace fpi {

std::optional<long> published_a(std::size_t d) {
  static constexpr long kA[] = {0, 1, 2, 4, 6, 9, 12, 16, 20, 25, 30, 36, 42};
  if (d >= std::size(kA)) return std::nullopt;
  return kA[d];
}

TableARow table_a_row(std::size_t d, const ReachableOptions& opts) {
  TableARow row;
  row.d = d;
  const auto start = std::chrono::steady_clock::now();
  const auto rs = reachable_set(equidistant(d, NumericMode::Rational), opts);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  row.status = rs.status;
  row.ustar_sq = rs.ustar_sq;
  row.ustar = rs.ustar;
  row.count = rs.count();
  long a = 0;
  if (rs.status == ClosureStatus::Closed && as_integer(Rational(rs.ustar_sq * static_cast<long>(d)), &a)) row.a = a;
  return row;
}

PointSet tilted_a21(double tilt) {
  return PointSet::from_float(2, {VectorD{0.0, 1.0}, VectorD{std::cos(tilt), -std::sin(tilt)}, VectorD{-1.0, 0.0}});
}

std::vector<PointSet> sqrt2_corpus(std::size_t sets, std::uint64_t seed) {
  std::vector<PointSet> out;
  out.reserve(sets + 1);
  for (std::size_t s = 0; s < sets; ++s) out.push_back(random_planar(3 + s % 8, seed + s));
  out.push_back(tilted_a21(1e-4));
  return out;
}

LemmaCorpusReport lemma_corpus_audit(std::size_t sets, std::size_t steps, std::uint64_t seed, unsigned threads) {
  static constexpr TiePolicy kPolicies[] = {TiePolicy::LowestIndex, TiePolicy::Random, TiePolicy::Greedy};
  struct Slot {
    double max_norm = 0.0;
    std::vector<AuditViolation> violations;
  };
  std::vector<Slot> slots(sets);
  parallel_for(sets, threads, [&](std::size_t s) {
    const auto ps = random_gapped_planar(3 + s % 8, seed + s);
    for (std::size_t k = 0; k < std::size(kPolicies); ++k) {
      const auto tr = run_iteration(ps, steps, {kPolicies[k], seed + 7919 * s + k});
      slots[s].max_norm = std::max(slots[s].max_norm, tr.max_norm);
      for (auto v : lemma_membership_audit(ps, tr)) {
        v.set = s;
        slots[s].violations.push_back(std::move(v));
      }
      for (auto v : gamma_bound_audit(ps, tr)) {
        v.set = s;
        slots[s].violations.push_back(std::move(v));
      }
    }
  });
  LemmaCorpusReport rep;
  rep.sets = sets;
  rep.traces = sets * std::size(kPolicies);
  for (auto& slot : slots) {
    rep.max_norm = std::max(rep.max_norm, slot.max_norm);
    for (auto& v : slot.violations) rep.violations.push_back(std::move(v));
  }
  std::stable_sort(rep.violations.begin(), rep.violations.end(),
                   [](const auto& a, const auto& b) { return a.set != b.set ? a.set < b.set : a.step < b.step; });
  return rep;
}

GrowthResult growth_demo_B(std::size_t d, std::size_t b, double phi, double m, std::optional<double> epsilon) {
  const double eps = epsilon ? *epsilon : b_epsilon_for_target(d, b, phi, m);
  const auto ps = family_B(d, b, eps, phi);
  const auto k = b_steps_for_target(d, b, eps, phi, m);
  const auto schedule = b_schedule(d, b, k);
  GrowthResult g;
  g.family = "B";
  const auto bounds = b_m_bounds(d, b, eps, phi);
  const auto ceil = b_max_feasible_i(d, b, eps, phi);
  g.params = {{"d", d},
              {"b", b},
              {"epsilon", eps},
              {"phi", phi},
              {"M", m},
              {"blocks", k},
              {"m_bound_a1", bounds.a1},
              {"m_bound_a2", bounds.a2},
              {"m_bound_in_block", bounds.in_block},
              {"i_a1", ceil.a1},
              {"i_a2", ceil.a2},
              {"i_in_block", ceil.in_block}};
  g.target = std::sqrt(m);
  g.report = verify_prescribed_schedule(ps, schedule, ScheduleFamily::B);
  g.achieved = g.report.final_norm;
  g.steps = g.report.legal_steps;
  return g;
}

GrowthResult growth_demo_C(std::size_t d, double phi, double m, std::optional<double> epsilon, std::optional<double> mu,
                           bool three_eps) {
  double eps = epsilon.value_or(0.0), mu_v = 0.0;
  if (three_eps) {
    if (!epsilon) eps = c_epsilon_for_target_3eps(phi, m);
    mu_v = 3.0 * eps;
  } else {
    mu_v = mu ? *mu : c_mu_for_target(eps, phi, m);
  }
  const auto ps = family_C(d, eps, mu_v, phi);
  const auto k = c_steps_for_target(eps, mu_v, phi, m);
  GrowthResult g;
  g.family = "C";
  g.params = {{"d", d},
              {"epsilon", eps},
              {"mu", mu_v},
              {"phi", phi},
              {"M", m},
              {"k", k},
              {"m_bound", c_m_bound(eps, mu_v, phi)},
              {"i_cai", c_max_feasible_i(eps, mu_v, phi)}};
  g.target = std::sqrt(m);
  g.report = verify_prescribed_schedule(ps, c_schedule(d, k), ScheduleFamily::C);
  g.achieved = g.report.final_norm;
  g.steps = g.report.legal_steps;
  return g;
}

nlohmann::json to_json(const TableARow& row) {
  nlohmann::json j{{"d", row.d},
                   {"status", std::string(to_string(row.status))},
                   {"ustar_sq", to_string(row.ustar_sq)},
                   {"ustar", row.ustar},
                   {"count", row.count},
                   {"seconds", row.seconds}};
  j["a"] = row.a ? nlohmann::json(*row.a) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const ScheduleReport& r) {
  nlohmann::json j{{"ok", r.ok}, {"legal_steps", r.legal_steps}, {"max_norm", r.max_norm}, {"final_norm", r.final_norm}};
  if (r.first_violation) {
    const auto& v = *r.first_violation;
    j["first_violation"] = {{"step", v.step}, {"prescribed", v.prescribed}, {"preferred", v.preferred}};
    j["condition"] = v.condition;
  } else {
    j["first_violation"] = nullptr;
    j["condition"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const GrowthResult& g) {
  return {{"family", g.family}, {"params", g.params},       {"target", g.target},
          {"achieved", g.achieved}, {"steps", g.steps}, {"ok", g.ok()},
          {"schedule", to_json(g.report)}};
}

}  // namespace fpi
