#include "fpi/point_set.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fpi {

std::string_view to_string(NumericMode m) { return m == NumericMode::Float ? "float" : "rational"; }

NumericMode parse_mode(std::string_view s) {
  if (s == "float") return NumericMode::Float;
  if (s == "rational") return NumericMode::Rational;
  throw std::invalid_argument("unknown numeric mode: " + std::string(s));
}

namespace {

void check_dims(std::size_t dim, std::size_t got) {
  if (got != dim) throw DimensionMismatch(dim, got);
}

}  // namespace

PointSet PointSet::from_float(std::size_t dim, std::vector<VectorD> points) {
  for (const auto& p : points) check_dims(dim, p.dim());
  PointSet ps;
  ps.dim_ = dim;
  ps.mode_ = NumericMode::Float;
  ps.points_ = std::move(points);
  return ps;
}

PointSet PointSet::from_rational(std::size_t dim, std::vector<VectorQ> points) {
  PointSet ps;
  ps.dim_ = dim;
  ps.mode_ = NumericMode::Rational;
  ps.points_.reserve(points.size());
  for (const auto& p : points) {
    check_dims(dim, p.dim());
    ps.points_.push_back(to_float(p));
  }
  ps.exact_ = std::move(points);
  ps.gram_ = gram_matrix<Rational>(ps.exact_);
  return ps;
}

PointSet PointSet::with_exact_gram(std::size_t dim, std::vector<VectorD> points, GramMatrix gram) {
  for (const auto& p : points) check_dims(dim, p.dim());
  if (gram.rows() != points.size() || gram.cols() != points.size())
    throw std::invalid_argument("Gram matrix shape does not match the point count");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      if (std::abs(to_double(gram(i, j)) - dot(points[i], points[j])) > 1e-9)
        throw std::invalid_argument("exact Gram matrix disagrees with the coordinates");
  PointSet ps;
  ps.dim_ = dim;
  ps.mode_ = NumericMode::Rational;
  ps.points_ = std::move(points);
  ps.gram_ = std::move(gram);
  return ps;
}

std::string ValidationReport::message() const {
  std::ostringstream out;
  if (usable()) return "valid";
  if (!on_sphere) {
    out << "points off the unit sphere:";
    for (auto i : off_sphere) out << ' ' << i;
  }
  if (!spans) {
    if (!on_sphere) out << "; ";
    out << "rank " << rank << " does not span the ambient space";
  }
  return out.str();
}

ValidationReport validate(const PointSet& ps) {
  if (ps.empty()) throw std::invalid_argument("empty point set");
  if (ps.dim() < 2) throw std::invalid_argument("dimension must be at least 2");

  ValidationReport rep;
  rep.norm_deviation.reserve(ps.size());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    const double dev = std::abs(norm(ps[j]) - 1.0);
    rep.norm_deviation.push_back(dev);
    bool ok = false;
    if (ps.mode() == NumericMode::Rational)
      ok = (*ps.exact_gram())(j, j) == 1;
    else
      ok = dev <= kUnitNormTolerance;
    if (!ok) rep.off_sphere.push_back(j);
  }
  rep.on_sphere = rep.off_sphere.empty();

  if (ps.mode() == NumericMode::Rational)
    rep.rank = exact_rank(*ps.exact_gram());
  else
    rep.rank = numeric_rank(ps.points(), kRankTolerance);
  rep.spans = rep.rank == ps.dim();
  return rep;
}

void require_valid(const PointSet& ps) {
  auto rep = validate(ps);
  if (!rep.usable()) throw std::invalid_argument("invalid point set: " + rep.message());
}

}  // namespace fpi
