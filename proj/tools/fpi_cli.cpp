// fpi: command-line driver for the farthest-point iteration toolkit.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpi/balance.hpp"
#include "fpi/experiments.hpp"
#include "fpi/generators.hpp"
#include "fpi/io.hpp"
#include "fpi/iteration.hpp"
#include "fpi/miniball.hpp"
#include "fpi/planar.hpp"
#include "fpi/polar.hpp"
#include "fpi/reachable.hpp"

using namespace fpi;
using nlohmann::json;

namespace {

struct Config {
  std::string input, output;
  std::uint64_t seed = 0;
  std::string mode = "float";
  std::optional<std::size_t> steps_opt, samples_opt;
  std::optional<double> phi_opt;
  std::string policy = "lowest";
  unsigned threads = 1;
  std::size_t d = 2, b = 1, m = 1;
  std::optional<double> epsilon, mu, norm_cap;
  double target_m = 25.0;
  std::string family;
  std::size_t states = 10'000'000;
  std::string schedule;
  bool three_eps = false;

  std::size_t steps(std::size_t def = 10000) const { return steps_opt.value_or(def); }
  std::size_t samples(std::size_t def = 100000) const { return samples_opt.value_or(def); }
  double phi(double def = kPi / 6) const { return phi_opt.value_or(def); }
};

// Thrown for a completed run whose checks failed; carries the report.
struct CheckFailed {
  json report;
};

std::string dump(const json& j) { return j.dump(2); }

void write_text(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw std::runtime_error("cannot write " + c.output);
  out << text;
}

std::vector<double> coords(const VectorD& v) { return {v.begin(), v.end()}; }

PointSet load_input(const Config& c) {
  if (c.input.empty()) throw std::invalid_argument("--input is required");
  return load_point_set(c.input, parse_mode(c.mode));
}

std::vector<VectorD> load_raw(const Config& c) {
  if (c.input.empty()) throw std::invalid_argument("--input is required");
  return load_point_set(c.input, NumericMode::Float).points();
}

// Sets from the generators, shared by `generate` and `--family` inputs.
PointSet make_family(const Config& c) {
  const auto mode = parse_mode(c.mode);
  if (c.family == "equidistant") return equidistant(c.d, mode);
  if (c.family == "A") return family_A(c.d, c.m, mode);
  if (c.family == "B") return family_B(c.d, c.b, c.epsilon.value_or(0.1), c.phi());
  if (c.family == "C") return family_C(c.d, c.epsilon.value_or(0.0), c.mu.value_or(0.1), c.phi());
  if (c.family == "random") return random_balanced(c.d, c.d + 1 + c.m, c.seed);
  if (c.family == "planar") return random_planar(c.m + 2, c.seed);
  if (c.family == "gapped") return random_gapped_planar(c.m + 2, c.seed);
  if (c.family == "polygon") return regular_polygon(c.m, c.phi(0.0));
  throw std::invalid_argument("unknown family: " + c.family);
}

PointSet input_or_family(const Config& c) { return c.family.empty() ? load_input(c) : make_family(c); }

int cmd_iterate(const Config& c) {
  const auto ps = input_or_family(c);
  const auto tr = run_iteration(ps, c.steps(), {parse_policy(c.policy), c.seed});
  std::ostringstream trace;
  write_trace_jsonl(trace, tr);
  json summary{{"command", "iterate"},
               {"steps", c.steps()},
               {"policy", c.policy},
               {"mode", std::string(to_string(tr.mode))},
               {"max_norm", tr.max_norm},
               {"final_norm", tr.steps.back().norm}};
  if (tr.max_norm_sq) summary["max_norm_sq"] = to_string(*tr.max_norm_sq);
  if (!c.output.empty()) {
    write_text(c, trace.str());
    std::cout << dump(summary) << '\n';
  } else {
    std::cout << trace.str() << summary.dump() << '\n';
  }
  return 0;
}

int cmd_ustar(const Config& c) {
  const auto ps = input_or_family(c);
  if (ps.mode() == NumericMode::Float) {
    const double est = ustar_estimate(ps, 8, c.seed, c.steps(1000));
    write_text(c, dump({{"command", "ustar"}, {"mode", "float"}, {"ustar_lower_bound", est}}) + "\n");
    return 0;
  }
  ReachableOptions opts;
  opts.norm_cap = c.norm_cap;
  opts.state_budget = c.states;
  opts.threads = c.threads;
  const auto rs = reachable_set(ps, opts);
  json out{{"command", "ustar"},
           {"mode", "rational"},
           {"status", std::string(to_string(rs.status))},
           {"ustar_sq", to_string(rs.ustar_sq)},
           {"ustar", rs.ustar},
           {"count", rs.count()}};
  if (rs.status == ClosureStatus::Closed) {
    write_text(c, dump(out) + "\n");
    return 0;
  }
  if (rs.status == ClosureStatus::UnboundedSuspect) {
    const auto bal = classify_balance(ps);
    out["balance"] = to_json(bal);
    out["explanation"] = bal.b == 0
                             ? "0-balanced: the origin lies outside conv X, so u*(X) is infinite"
                             : "not 0-balanced: growth of this kind is realized by the B/C constructions; "
                               "the search alone does not certify u* = infinity";
  }
  throw CheckFailed{out};
}

int cmd_table_a(const Config& c) {
  ReachableOptions opts;
  opts.state_budget = c.states;
  opts.threads = c.threads;
  std::ostringstream csv;
  csv << "d,a,ustar_sq,ustar,count,seconds,status,published\n";
  bool ok = true;
  json rows = json::array();
  for (std::size_t d = 2; d <= c.d; ++d) {
    const auto row = table_a_row(d, opts);
    const auto want = published_a(d);
    const bool match = row.a && want && *row.a == *want;
    ok = ok && row.a.has_value() && (!want || match);
    csv << d << ',' << (row.a ? std::to_string(*row.a) : "") << ',' << to_string(row.ustar_sq) << ','
        << format_double(row.ustar) << ',' << row.count << ',' << format_double(row.seconds) << ','
        << to_string(row.status) << ',' << (want ? std::to_string(*want) : "") << '\n';
    rows.push_back(to_json(row));
  }
  write_text(c, csv.str());
  if (!ok) throw CheckFailed{{{"command", "table-a"}, {"rows", rows}, {"error", "a(d) missing or mismatched"}}};
  return 0;
}

int cmd_classify(const Config& c) {
  const auto ps = input_or_family(c);
  auto j = to_json(classify_balance(ps));
  j["command"] = "classify";
  write_text(c, dump(j) + "\n");
  return 0;
}

int cmd_delta(const Config& c) {
  const auto ps = input_or_family(c);
  write_text(c, dump({{"command", "delta"}, {"delta", delta(ps)}, {"seb_equivalence", seb_equivalence_check(ps)}}) +
                    "\n");
  return 0;
}

int cmd_seb(const Config& c) {
  const auto pts = load_raw(c);
  const auto ball = seb(pts, c.seed);
  const auto n = normalize(pts, c.seed);
  write_text(c, dump({{"command", "seb"},
                      {"center", coords(ball.center)},
                      {"radius", ball.radius},
                      {"support", ball.support},
                      {"boundary", n.boundary}}) +
                    "\n");
  return 0;
}

int cmd_bc(const Config& c) {
  const auto ps = input_or_family(c);
  const auto& pts = ps.points();
  const auto tr = bc_approximate(pts, c.steps(), parse_policy(c.policy), c.seed);
  const auto n = normalize(pts, c.seed);
  const bool all_boundary = n.boundary.size() == pts.size();
  std::optional<double> ustar;
  std::string bound_source = "bound unavailable";
  const bool unit = norm(tr.ball.center) <= 1e-9 && std::abs(tr.ball.radius - 1.0) <= 1e-9;
  if (ps.mode() == NumericMode::Rational && unit && validate(ps).usable()) {
    ustar = ustar_exact(ps).ustar;
    bound_source = "exact u*";
  } else if (ps.dim() == 2 && all_boundary) {
    ustar = std::sqrt(2.0);
    bound_source = "planar sqrt2";
  }
  std::size_t sqrt_violations = 0, lin_violations = 0;
  for (std::size_t i = 1; i < tr.steps.size(); ++i) {
    const double e = tr.steps[i].err;
    if (e > 1.0 / std::sqrt(static_cast<double>(i)) + 1e-9) ++sqrt_violations;
    if (ustar && e > *ustar / static_cast<double>(i) + 1e-9) ++lin_violations;
  }
  const auto rel = relation_check(tr, tr.ball);
  const auto absorbed = interior_absorption_index(pts, tr);
  if (!c.output.empty()) {
    std::ofstream out(c.output);
    write_approx_csv(out, tr, ustar);
  }
  json rep{{"command", "bc"},
           {"steps", c.steps()},
           {"radius", tr.ball.radius},
           {"center", coords(tr.ball.center)},
           {"final_err", tr.steps.back().err},
           {"bound_source", bound_source},
           {"sqrt_violations", sqrt_violations},
           {"lin_violations", lin_violations},
           {"max_residual", rel.max_residual},
           {"all_boundary", all_boundary}};
  rep["divergence"] = rel.divergence ? json(*rel.divergence) : json(nullptr);
  rep["interior_absorption"] = absorbed ? json(*absorbed) : json("not yet");
  const bool ok = sqrt_violations == 0 && lin_violations == 0 && (!all_boundary || rel.max_residual <= 1e-8);
  if (!ok) throw CheckFailed{rep};
  std::cout << dump(rep) << '\n';
  return 0;
}

int cmd_generate(const Config& c) {
  if (c.family.empty()) throw std::invalid_argument("--family is required");
  const auto ps = make_family(c);
  write_text(c, dump(point_set_to_json(ps)) + "\n");
  return 0;
}

std::vector<std::size_t> parse_schedule(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(std::stoul(tok));
  return out;
}

int cmd_schedule_verify(const Config& c) {
  PointSet ps;
  std::vector<std::size_t> schedule;
  ScheduleFamily fam = ScheduleFamily::Generic;
  if (!c.schedule.empty()) {
    ps = input_or_family(c);
    schedule = parse_schedule(c.schedule);
  } else if (c.family == "A") {
    ps = family_A(c.d, c.m);
    schedule = a_schedule(c.d, c.m);
    fam = ScheduleFamily::A;
  } else if (c.family == "B") {
    const double eps = c.epsilon ? *c.epsilon : b_epsilon_for_target(c.d, c.b, c.phi(), c.target_m);
    ps = family_B(c.d, c.b, eps, c.phi());
    schedule = b_schedule(c.d, c.b, b_steps_for_target(c.d, c.b, eps, c.phi(), c.target_m));
    fam = ScheduleFamily::B;
  } else if (c.family == "C") {
    const double eps = c.epsilon.value_or(0.0);
    const double mu = c.mu ? *c.mu : c_mu_for_target(eps, c.phi(), c.target_m);
    ps = family_C(c.d, eps, mu, c.phi());
    schedule = c_schedule(c.d, c_steps_for_target(eps, mu, c.phi(), c.target_m));
    fam = ScheduleFamily::C;
  } else {
    throw std::invalid_argument("schedule-verify needs --schedule with --input, or --family A|B|C");
  }
  auto rep = to_json(verify_prescribed_schedule(ps, schedule, fam));
  rep["command"] = "schedule-verify";
  rep["schedule_length"] = schedule.size();
  if (!rep["ok"].get<bool>()) throw CheckFailed{rep};
  write_text(c, dump(rep) + "\n");
  return 0;
}

json violations_json(const std::vector<AuditViolation>& vs, std::size_t cap = 100) {
  json out = json::array();
  for (std::size_t k = 0; k < vs.size() && k < cap; ++k) out.push_back(to_json(vs[k]));
  return out;
}

int cmd_audit_lemma(const Config& c) {
  const std::size_t sets = c.samples(1000), steps = c.steps(1000);
  const auto rep = lemma_corpus_audit(sets, steps, c.seed, c.threads);
  json out{{"audit", "lemma"},
           {"params", {{"sets", sets}, {"steps", steps}, {"seed", c.seed}}},
           {"samples", rep.traces},
           {"violations", violations_json(rep.violations)},
           {"violation_count", rep.violations.size()},
           {"max_norm", rep.max_norm}};
  if (!rep.violations.empty()) throw CheckFailed{out};
  write_text(c, dump(out) + "\n");
  return 0;
}

int cmd_audit_disjoint(const Config& c) {
  const RegionSpec spec(c.phi(0.0));
  const auto rep = disjointness_audit(spec, c.samples(), c.seed);
  json bad = json::array();
  for (const auto& p : rep.in_U) bad.push_back({{"kind", "T sample in U"}, {"u", coords(p)}});
  for (const auto& p : rep.angle_failures) bad.push_back({{"kind", "Tn(P+) angle"}, {"u", coords(p)}});
  json out{{"audit", "disjoint"},
           {"params", {{"phi", spec.phi}, {"seed", c.seed}}},
           {"samples", rep.samples},
           {"violations", bad},
           {"max_norm", nullptr}};
  if (!bad.empty()) throw CheckFailed{out};
  write_text(c, dump(out) + "\n");
  return 0;
}

int cmd_audit_sqrt2(const Config& c) {
  const std::size_t sets = c.samples(1000), steps = c.steps(1000);
  const auto corpus = sqrt2_corpus(sets, c.seed);
  const auto rep = sqrt2_bound_audit(corpus, steps, {TiePolicy::LowestIndex, TiePolicy::Random, TiePolicy::Greedy},
                                     c.seed, c.threads);
  json out{{"audit", "sqrt2"},
           {"params", {{"sets", corpus.size()}, {"steps", steps}, {"seed", c.seed}}},
           {"samples", corpus.size() * 3},
           {"violations", violations_json(rep.violations)},
           {"max_norm", rep.max_norm},
           {"witness", rep.witness},
           {"witness_reaches_sqrt2", rep.max_norm >= std::sqrt(2.0) - 1e-3}};
  if (!rep.violations.empty()) throw CheckFailed{out};
  write_text(c, dump(out) + "\n");
  return 0;
}

int cmd_growth_demo(const Config& c) {
  GrowthResult g;
  if (c.family == "B")
    g = growth_demo_B(c.d, c.b, c.phi(), c.target_m, c.epsilon);
  else if (c.family == "C")
    g = growth_demo_C(c.d, c.phi(), c.target_m, c.epsilon, c.mu, c.three_eps);
  else
    throw std::invalid_argument("growth-demo needs --family B or C");
  auto j = to_json(g);
  j["command"] = "growth-demo";
  if (!g.ok()) throw CheckFailed{j};
  write_text(c, dump(j) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Farthest-point iteration on the unit sphere: search, classification, constructions and audits"};
  app.require_subcommand(1);
  Config c;

  auto common = [&c](CLI::App* s) {
    s->add_option("--input", c.input, "point set (.json or .csv)");
    s->add_option("--output", c.output, "output file (default stdout)");
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--mode", c.mode, "numeric mode")->check(CLI::IsMember({"float", "rational"}));
    s->add_option("--steps", c.steps_opt, "iteration steps");
    s->add_option("--policy", c.policy, "tie policy")->check(CLI::IsMember({"lowest", "random", "greedy"}));
    s->add_option("--samples", c.samples_opt, "audit samples or corpus size");
    s->add_option("--threads", c.threads, "worker threads");
    s->add_option("--d", c.d, "dimension");
    s->add_option("--b", c.b, "balance of the B family");
    s->add_option("--m", c.m, "A family m; point count offset for random families");
    s->add_option("--epsilon", c.epsilon, "family epsilon");
    s->add_option("--mu", c.mu, "family C mu");
    s->add_option("--phi", c.phi_opt, "family phi (default pi/6; 0 for audit-disjoint)");
    s->add_option("--target-m", c.target_m, "target squared norm M");
    s->add_option("--family", c.family, "equidistant | A | B | C | random | planar | gapped | polygon");
  };

  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const Config&);
  };
  const Entry entries[] = {
      {"iterate", "run the farthest-point iteration, JSONL trace", cmd_iterate},
      {"ustar", "exact reachable-set search (rational) or lower bound (float)", cmd_ustar},
      {"table-a", "a(d) = d u*^2 for equidistant sets, d = 2..--d", cmd_table_a},
      {"classify", "balance class, delta, support, min-norm point", cmd_classify},
      {"delta", "delta(X) and the SEB equivalence check", cmd_delta},
      {"seb", "smallest enclosing ball", cmd_seb},
      {"bc", "Badoiu-Clarkson approximation with bound checks, CSV trace", cmd_bc},
      {"generate", "emit a generated point set as JSON", cmd_generate},
      {"schedule-verify", "replay a prescribed schedule", cmd_schedule_verify},
      {"audit-lemma", "membership and transition audit on gapped planar sets", cmd_audit_lemma},
      {"audit-disjoint", "T versus U disjointness audit", cmd_audit_disjoint},
      {"audit-sqrt2", "sqrt2 bound audit on random planar sets", cmd_audit_sqrt2},
      {"growth-demo", "grow ||u|| past sqrt(M) with the B or C construction", cmd_growth_demo},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    auto* s = app.add_subcommand(e.name, e.help);
    common(s);
    subs.emplace_back(s, &e);
  }
  for (auto& [s, e] : subs) {
    const std::string name = e->name;
    if (name == "ustar") {
      s->add_option("--norm-cap", c.norm_cap, "abort as unbounded-suspect beyond this norm");
      s->add_option("--states", c.states, "state budget");
    }
    if (name == "table-a") s->add_option("--states", c.states, "state budget per row");
    if (name == "schedule-verify") s->add_option("--schedule", c.schedule, "comma-separated point indices");
    if (name == "growth-demo") s->add_flag("--three-eps", c.three_eps, "family C with mu = 3 epsilon");
  }

  CLI11_PARSE(app, argc, argv);
  // table-a reads --d as d_max; its default is 7.
  if (app.got_subcommand("table-a") && app.get_subcommand("table-a")->count("--d") == 0) c.d = 7;
  if (app.got_subcommand("growth-demo") && app.get_subcommand("growth-demo")->count("--d") == 0) c.d = 3;
  if (app.got_subcommand("schedule-verify") && app.get_subcommand("schedule-verify")->count("--d") == 0) c.d = 3;

  for (auto& [s, e] : subs) {
    if (!s->parsed()) continue;
    try {
      return e->run(c);
    } catch (const CheckFailed& f) {
      json j = f.report;
      j["ok"] = false;
      std::cout << j.dump(2) << '\n';
      return 1;
    } catch (const std::exception& ex) {
      std::cout << json{{"ok", false}, {"command", e->name}, {"error", ex.what()}}.dump(2) << '\n';
      return 2;
    }
  }
  return 2;
}
