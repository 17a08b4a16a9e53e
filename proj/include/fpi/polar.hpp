#pragma once

#include <numbers>

#include "fpi/vector.hpp"

namespace fpi {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2pi).
double reduce_angle(double a);

/// Counterclockwise angular distance from `from` to `to`, in [0, 2pi).
double ccw_distance(double from, double to);

/// Whether `a` lies in the open arc running counterclockwise from `lo` to
/// `hi` (all taken modulo 2pi). The arc (lo, hi) with hi - lo >= 2pi is the
/// full circle minus nothing, and is treated as containing every angle.
bool in_open_arc(double a, double lo, double hi);
bool in_closed_arc(double a, double lo, double hi);

struct PolarPoint {
  double r = 0.0;
  double phi = 0.0;  // reduced to [0, 2pi)

  PolarPoint() = default;
  PolarPoint(double radius, double angle);
};

/// Throws std::invalid_argument for d != 2 or the zero vector.
PolarPoint to_polar(const VectorD& v);
VectorD from_polar(const PolarPoint& p);

/// Angle in [0, pi] between two nonzero vectors of equal dimension.
double angle_between(const VectorD& a, const VectorD& b);

VectorD rotate_2d(const VectorD& v, double angle);

}  // namespace fpi
