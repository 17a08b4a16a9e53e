#include "fpi/polar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpi {

double reduce_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double ccw_distance(double from, double to) { return reduce_angle(to - from); }

bool in_open_arc(double a, double lo, double hi) {
  const double width = hi - lo;
  if (width >= kTwoPi) return true;
  if (width <= 0) return false;
  const double off = ccw_distance(lo, a);
  return off > 0 && off < width;
}

bool in_closed_arc(double a, double lo, double hi) {
  const double width = hi - lo;
  if (width >= kTwoPi) return true;
  if (width < 0) return false;
  const double off = ccw_distance(lo, a);
  return off <= width;
}

PolarPoint::PolarPoint(double radius, double angle) : r(radius), phi(reduce_angle(angle)) {
  if (radius < 0) throw std::invalid_argument("polar radius must be non-negative");
}

PolarPoint to_polar(const VectorD& v) {
  if (v.dim() != 2) throw std::invalid_argument("polar coordinates need d = 2");
  if (v.is_zero()) throw std::invalid_argument("angle of the zero vector is undefined");
  return PolarPoint(std::hypot(v[0], v[1]), std::atan2(v[1], v[0]));
}

VectorD from_polar(const PolarPoint& p) { return VectorD{p.r * std::cos(p.phi), p.r * std::sin(p.phi)}; }

double angle_between(const VectorD& a, const VectorD& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  if (a.dim() == 2) {
    // atan2 form stays accurate near 0 and pi
    const double cross = a[0] * b[1] - a[1] * b[0];
    return std::abs(std::atan2(cross, dot(a, b)));
  }
  const double c = dot(a, b) / (norm(a) * norm(b));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

VectorD rotate_2d(const VectorD& v, double angle) {
  if (v.dim() != 2) throw std::invalid_argument("rotate_2d needs d = 2");
  const double c = std::cos(angle), s = std::sin(angle);
  return VectorD{c * v[0] - s * v[1], s * v[0] + c * v[1]};
}

}  // namespace fpi
