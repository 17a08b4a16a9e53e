#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "fpi/point_set.hpp"

namespace fpi {

inline constexpr double kWeightTolerance = 1e-10;

struct BalanceReport {
  std::size_t b = 0;
  double delta = 0.0;
  VectorD min_norm_point;
  std::vector<std::size_t> support;  // indices into the input; empty iff b = 0
};

/// Point of conv X nearest the origin (Wolfe's method).
VectorD min_norm_point(std::span<const VectorD> points);
VectorD min_norm_point(const PointSet& ps);

/// Whether <p, x_j - p> >= -tol for all j.
bool min_norm_certificate(std::span<const VectorD> points, const VectorD& p, double tol = 1e-9);

/// Dimension of the smallest face of conv X holding 0 in its relative
/// interior, found by maximizing each weight of a convex representation of 0.
BalanceReport classify_balance(std::span<const VectorD> points);
BalanceReport classify_balance(const PointSet& ps);

/// -max over unit u of min_j <x_j, u>: negative outside, zero on the
/// boundary, positive inside (the smallest facet-hyperplane distance).
double delta(std::span<const VectorD> points);
double delta(const PointSet& ps);

/// (SEB of X is the unit ball at 0) <=> (delta >= 0).
bool seb_equivalence_check(std::span<const VectorD> points);
bool seb_equivalence_check(const PointSet& ps);

nlohmann::json to_json(const BalanceReport& r);

}  // namespace fpi
