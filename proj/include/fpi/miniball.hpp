#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "fpi/iteration.hpp"
#include "fpi/vector.hpp"

namespace fpi {

inline constexpr double kBallSlack = 1e-9;

struct Ball {
  VectorD center;
  double radius = 0.0;
  std::vector<std::size_t> support;  // input indices on the boundary whose ball this is
};

/// Smallest enclosing ball by move-to-front Welzl.
///
/// The input is deduplicated, shuffled with `seed`, and the result checked for
/// enclosure and for the center lying in the hull of the support. A failed
/// check restarts with a fresh permutation. Throws std::invalid_argument for
/// fewer than two points or a set whose points all coincide.
Ball seb(std::span<const VectorD> points, std::uint64_t seed = 0);

/// Circumcenter of the points within their affine hull; nullopt when they are
/// affinely dependent.
std::optional<Ball> circumball(std::span<const VectorD> points);

/// Is `c` a convex combination of `points` (to within `tol`)?
bool in_convex_hull(std::span<const VectorD> points, const VectorD& c, double tol = 1e-9);

struct NormalizedSet {
  std::vector<VectorD> points;          // (y - c) / R
  Ball ball;
  std::vector<std::size_t> boundary;    // indices with norm >= 1 - 1e-9
};

NormalizedSet normalize(std::span<const VectorD> points, std::uint64_t seed = 0);

struct ApproxStep {
  VectorD center;                     // c_i
  double err = 0.0;                   // ||c - c_i|| / R
  std::vector<std::size_t> ties;      // farthest points from c_i; empty on the last entry
  std::optional<std::size_t> chosen;  // index of xi_i
  double residual = 0.0;              // ||R u_i - i (c_i - c)||
};

struct ApproxTrace {
  std::vector<VectorD> points;  // input as given
  Ball ball;
  std::vector<ApproxStep> steps;  // c_0 .. c_N
};

/// c_0 = 0, c_{i+1} = c_i + (xi_i - c_i)/(i+1). A farthest-point iteration on
/// the normalized set runs alongside with the same choices, giving the
/// residuals.
ApproxTrace bc_approximate(std::span<const VectorD> points, std::size_t steps, TiePolicy policy = TiePolicy::LowestIndex,
                           std::uint64_t seed = 0);

struct RelationReport {
  double max_residual = 0.0;
  /// First i >= 1 at which xi_i is not among the minimizers of <x, u_i> on
  /// the normalized set, i.e. where the two recurrences stop being the same
  /// iteration.
  std::optional<std::size_t> divergence;
};

RelationReport relation_check(const ApproxTrace& trace, const Ball& ball);

/// Smallest i0 such that every observed xi_i with i >= i0 is a boundary point;
/// nullopt while the last choice was still interior.
std::optional<std::size_t> interior_absorption_index(std::span<const VectorD> points, const ApproxTrace& trace);

/// CSV columns i,err_i,bound_sqrt,bound_lin,residual. bound_sqrt is blank at
/// i = 0, bound_lin blank when `ustar` is not given.
void write_approx_csv(std::ostream& out, const ApproxTrace& trace, std::optional<double> ustar);

}  // namespace fpi
