#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "fpi/point_set.hpp"

namespace fpi {

enum class TiePolicy { LowestIndex, Random, Greedy };

std::string_view to_string(TiePolicy p);
TiePolicy parse_policy(std::string_view s);

inline constexpr double kFloatTieTolerance = 1e-9;

template <Scalar T>
struct StepResult {
  std::vector<std::size_t> ties;       // argmin_j <x_j, u> within the tie band, ascending
  std::vector<Vector<T>> successors;   // u + x_j for j in ties
};

/// One farthest-point step: every x_j with <x_j,u> <= min_k <x_k,u> + tie_tol.
template <Scalar T>
StepResult<T> farthest_step(std::span<const Vector<T>> points, const Vector<T>& u, const T& tie_tol) {
  StepResult<T> out;
  if (points.empty()) return out;
  std::vector<T> products;
  products.reserve(points.size());
  for (const auto& x : points) products.push_back(dot(x, u));
  T lo = products.front();
  for (const auto& p : products)
    if (p < lo) lo = p;
  const T band = lo + tie_tol;
  for (std::size_t j = 0; j < points.size(); ++j)
    if (products[j] <= band) {
      out.ties.push_back(j);
      out.successors.push_back(u + points[j]);
    }
  return out;
}

/// Float-mode convenience over a PointSet's float coordinates.
StepResult<double> farthest_step(const PointSet& ps, const VectorD& u, double tie_tol = kFloatTieTolerance);

/// Picks one index out of a tie set according to a policy.
class TieBreaker {
 public:
  explicit TieBreaker(TiePolicy policy, std::uint64_t seed = 0) : policy_(policy), rng_(seed) {}

  /// `key(j)` is only consulted by the greedy policy: the largest key wins,
  /// the lowest index among equal keys. The engine passes
  /// (||u + x_j||^2, best ||.||^2 one step further), so equal-norm branches
  /// are separated by a one-step lookahead.
  template <class Key>
  std::size_t pick(std::span<const std::size_t> ties, Key&& successor_norm_sq) {
    switch (policy_) {
      case TiePolicy::LowestIndex:
        return ties.front();
      case TiePolicy::Random: {
        std::uniform_int_distribution<std::size_t> dist(0, ties.size() - 1);
        return ties[dist(rng_)];
      }
      case TiePolicy::Greedy: {
        std::size_t best = ties.front();
        auto best_val = successor_norm_sq(best);
        for (std::size_t k = 1; k < ties.size(); ++k) {
          auto v = successor_norm_sq(ties[k]);
          if (v > best_val) {
            best_val = v;
            best = ties[k];
          }
        }
        return best;
      }
    }
    return ties.front();
  }

  TiePolicy policy() const { return policy_; }

 private:
  TiePolicy policy_;
  std::mt19937_64 rng_;
};

struct TraceStep {
  VectorD u;                          // u_i (float view)
  double norm = 0.0;                  // ||u_i||
  std::vector<std::size_t> ties;      // empty on the final entry
  std::optional<std::size_t> chosen;  // index of chi_i; empty on the final entry
  VectorD chi;                        // x_chosen; empty on the final entry
};

struct IterationTrace {
  NumericMode mode = NumericMode::Float;
  std::vector<TraceStep> steps;  // u_0 .. u_N
  double max_norm = 0.0;
  std::optional<Rational> max_norm_sq;  // exact, rational mode only
};

struct IterationOptions {
  TiePolicy policy = TiePolicy::LowestIndex;
  std::uint64_t seed = 0;
  double tie_tol = kFloatTieTolerance;  // ignored in rational mode (exact ties)
};

/// Runs `steps` farthest-point steps from u_0 = 0. Rational-mode sets use
/// exact scalar products from the Gram matrix, so ties are exact.
IterationTrace run_iteration(const PointSet& ps, std::size_t steps, const IterationOptions& opts = {});

/// Checks lambda_j^2 = 1 + 2 lambda_{j-1} cos(gamma_{j-1}) + lambda_{j-1}^2
/// at every step with u_{j-1} != 0, gamma being the angle between u_{j-1}
/// and chi_{j-1}. Planar traces only.
bool law_of_cosines_check(const IterationTrace& trace, double tol = 1e-9);

/// One JSON object per line: {"i", "u", "chosen", "ties", "norm"}.
void write_trace_jsonl(std::ostream& out, const IterationTrace& trace);

}  // namespace fpi
