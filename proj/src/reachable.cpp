#include "fpi/reachable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>

#include "fpi/io.hpp"
#include "fpi/iteration.hpp"
#include "fpi/parallel.hpp"

namespace fpi {

std::string_view to_string(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::Closed:
      return "closed";
    case ClosureStatus::UnboundedSuspect:
      return "unbounded-suspect";
    case ClosureStatus::BudgetExhausted:
      return "budget-exhausted";
  }
  return "closed";
}

namespace {

using Key = std::vector<Rational>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = k.size();
    for (const auto& q : k) h ^= hash_value(q) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct Node {
  Key products;  // <x_j, u> for all j
  LatticeState state;
};

struct Candidate {
  Key products;
  std::size_t via;  // index of the point added
  Rational norm_sq;
};

}  // namespace

ReachableSet reachable_set(const PointSet& ps, const ReachableOptions& opts) {
  require_valid(ps);
  if (ps.mode() != NumericMode::Rational || !ps.exact_gram())
    throw std::invalid_argument("reachable_set needs a rational-mode point set");
  const auto& g = *ps.exact_gram();
  const std::size_t n = ps.size();

  ReachableSet out;
  std::unordered_map<Key, std::size_t, KeyHash> seen;
  std::vector<Node> nodes;

  Node root;
  root.products.assign(n, Rational(0));
  root.state.coeffs.assign(n, 0);
  root.state.norm_sq = 0;
  seen.emplace(root.products, 0);
  nodes.push_back(std::move(root));

  std::vector<std::size_t> frontier{0};
  std::mt19937_64 rng(opts.shuffle_seed.value_or(0));
  const double cap_sq = opts.norm_cap ? (*opts.norm_cap) * (*opts.norm_cap) : 0.0;

  while (!frontier.empty() && out.status == ClosureStatus::Closed) {
    if (opts.shuffle_seed) std::shuffle(frontier.begin(), frontier.end(), rng);

    std::vector<std::vector<Candidate>> expanded(frontier.size());
    parallel_for(frontier.size(), opts.threads, [&](std::size_t f) {
      const Node& node = nodes[frontier[f]];
      const Key& s = node.products;
      Rational lo = s[0];
      for (const auto& v : s)
        if (v < lo) lo = v;
      for (std::size_t j = 0; j < n; ++j) {
        if (s[j] != lo) continue;
        Candidate c;
        c.via = j;
        c.norm_sq = node.state.norm_sq + 2 * s[j] + g(j, j);
        c.products.resize(n);
        for (std::size_t k = 0; k < n; ++k) c.products[k] = s[k] + g(j, k);
        expanded[f].push_back(std::move(c));
      }
    });

    std::vector<std::size_t> next;
    for (std::size_t f = 0; f < frontier.size() && out.status == ClosureStatus::Closed; ++f) {
      const std::size_t parent = frontier[f];
      for (auto& c : expanded[f]) {
        if (seen.contains(c.products)) continue;
        Node node;
        node.state.coeffs = nodes[parent].state.coeffs;
        node.state.coeffs[c.via] += 1;
        node.state.depth = nodes[parent].state.depth + 1;
        node.state.norm_sq = c.norm_sq;
        node.products = std::move(c.products);
        seen.emplace(node.products, nodes.size());
        next.push_back(nodes.size());
        const double nsq = to_double(node.state.norm_sq);
        nodes.push_back(std::move(node));
        if (opts.norm_cap && nsq > cap_sq) {
          out.status = ClosureStatus::UnboundedSuspect;
          break;
        }
        if (nodes.size() > opts.state_budget) {
          out.status = ClosureStatus::BudgetExhausted;
          break;
        }
      }
    }
    frontier = std::move(next);
  }

  out.states.reserve(nodes.size());
  out.ustar_sq = 0;
  for (auto& node : nodes) {
    if (node.state.norm_sq > out.ustar_sq) out.ustar_sq = node.state.norm_sq;
    out.states.push_back(std::move(node.state));
  }
  out.ustar = std::sqrt(to_double(out.ustar_sq));
  return out;
}

ExactUstar ustar_exact(const PointSet& ps, const ReachableOptions& opts) {
  auto rs = reachable_set(ps, opts);
  if (rs.status != ClosureStatus::Closed)
    throw ClosureError(rs.status, "reachable-set closure did not finish: " + std::string(to_string(rs.status)) +
                                      " after " + std::to_string(rs.count()) + " states");
  return ExactUstar{rs.ustar_sq, rs.ustar, rs.count()};
}

double ustar_estimate(const PointSet& ps, std::size_t traces, std::uint64_t seed, std::size_t steps) {
  double best = 0.0;
  for (std::size_t t = 0; t < traces; ++t) {
    IterationOptions opts;
    if (t == 0)
      opts.policy = TiePolicy::LowestIndex;
    else if (t == 1)
      opts.policy = TiePolicy::Greedy;
    else
      opts.policy = TiePolicy::Random;
    opts.seed = seed + t;
    best = std::max(best, run_iteration(ps, steps, opts).max_norm);
  }
  return best;
}

void write_reachable_csv(std::ostream& out, const ReachableSet& rs) {
  const std::size_t n = rs.states.empty() ? 0 : rs.states.front().coeffs.size();
  out << "state,depth";
  for (std::size_t j = 1; j <= n; ++j) out << ",k_" << j;
  out << ",norm_sq,norm\n";
  for (std::size_t i = 0; i < rs.states.size(); ++i) {
    const auto& s = rs.states[i];
    out << i << ',' << s.depth;
    for (long k : s.coeffs) out << ',' << k;
    out << ',' << to_string(s.norm_sq) << ',' << format_double(std::sqrt(to_double(s.norm_sq))) << '\n';
  }
}

}  // namespace fpi
