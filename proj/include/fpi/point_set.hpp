#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpi/matrix.hpp"
#include "fpi/vector.hpp"

namespace fpi {

enum class NumericMode { Float, Rational };

std::string_view to_string(NumericMode m);
NumericMode parse_mode(std::string_view s);

inline constexpr double kUnitNormTolerance = 1e-12;
inline constexpr double kRankTolerance = 1e-9;

/// A finite set X of points intended to lie on the unit hypersphere.
///
/// Float coordinates are always available. In rational mode the set also
/// carries an exact Gram matrix, and exact coordinates when those are
/// rational. Sets whose coordinates are irrational (regular simplices for
/// l >= 2, say) are rational-mode through their Gram matrix alone.
class PointSet {
 public:
  PointSet() = default;

  static PointSet from_float(std::size_t dim, std::vector<VectorD> points);
  static PointSet from_rational(std::size_t dim, std::vector<VectorQ> points);
  static PointSet with_exact_gram(std::size_t dim, std::vector<VectorD> points, GramMatrix gram);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  NumericMode mode() const { return mode_; }

  const std::vector<VectorD>& points() const { return points_; }
  const VectorD& operator[](std::size_t i) const { return points_[i]; }

  bool has_exact_coords() const { return !exact_.empty(); }
  const std::vector<VectorQ>& exact_points() const { return exact_; }
  /// Present iff mode() == Rational.
  const std::optional<GramMatrix>& exact_gram() const { return gram_; }

 private:
  std::size_t dim_ = 0;
  NumericMode mode_ = NumericMode::Float;
  std::vector<VectorD> points_;
  std::vector<VectorQ> exact_;
  std::optional<GramMatrix> gram_;
};

struct ValidationReport {
  std::vector<double> norm_deviation;  // | ||x_j|| - 1 |, float view
  std::vector<std::size_t> off_sphere;  // indices violating the unit-norm invariant
  std::size_t rank = 0;
  bool on_sphere = false;
  bool spans = false;
  bool usable() const { return on_sphere && spans; }
  std::string message() const;
};

/// Checks the unit-norm and spanning invariants. Throws std::invalid_argument
/// for an empty set or d < 2.
ValidationReport validate(const PointSet& ps);

/// Throws std::invalid_argument carrying the report message unless usable.
void require_valid(const PointSet& ps);

}  // namespace fpi
