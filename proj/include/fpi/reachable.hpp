#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpi/point_set.hpp"

namespace fpi {

/// u = sum_j coeffs[j] * x_j, first reached after `depth` = sum(coeffs) steps.
struct LatticeState {
  std::vector<long> coeffs;
  std::size_t depth = 0;
  Rational norm_sq;
};

enum class ClosureStatus { Closed, UnboundedSuspect, BudgetExhausted };

std::string_view to_string(ClosureStatus s);

struct ReachableOptions {
  std::optional<double> norm_cap;          // abort with UnboundedSuspect beyond this norm
  std::size_t state_budget = 10'000'000;   // abort with BudgetExhausted beyond this count
  unsigned threads = 1;
  std::optional<std::uint64_t> shuffle_seed;  // permute each BFS level before expansion
};

/// U(X) as a set of distinct vectors.
///
/// States are deduplicated by the exact vector of scalar products
/// (<x_1,u>, ..., <x_n,u>) = G k, which determines u because X spans R^d.
/// The result is level-synchronous: whatever the worker count, states are
/// merged in frontier order at each barrier.
struct ReachableSet {
  ClosureStatus status = ClosureStatus::Closed;
  std::vector<LatticeState> states;  // BFS discovery order; states[0] is u = 0
  Rational ustar_sq;                  // max ||u||^2 over the states found
  double ustar = 0.0;
  std::size_t count() const { return states.size(); }
};

/// Requires a rational-mode PointSet (exact Gram matrix).
ReachableSet reachable_set(const PointSet& ps, const ReachableOptions& opts = {});

class ClosureError : public std::runtime_error {
 public:
  ClosureError(ClosureStatus status, const std::string& what) : std::runtime_error(what), status_(status) {}
  ClosureStatus status() const { return status_; }

 private:
  ClosureStatus status_;
};

struct ExactUstar {
  Rational ustar_sq;
  double ustar = 0.0;
  std::size_t count = 0;
};

/// sup ||u|| over U(X). Throws ClosureError if the closure did not finish.
ExactUstar ustar_exact(const PointSet& ps, const ReachableOptions& opts = {});

/// Max norm over `traces` runs of `steps` steps each (lowest-index, greedy,
/// then seeded random); a lower bound on u*(X).
double ustar_estimate(const PointSet& ps, std::size_t traces, std::uint64_t seed, std::size_t steps = 1000);

/// CSV: state,depth,k_1..k_n,norm_sq,norm
void write_reachable_csv(std::ostream& out, const ReachableSet& rs);

}  // namespace fpi
