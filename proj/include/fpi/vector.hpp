#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpi/rational.hpp"

namespace fpi {

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t a, std::size_t b)
      : std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " +
                              std::to_string(b)) {}
};

/// Dense Euclidean vector over one of the two supported scalar types.
template <Scalar T>
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : coords_(dim, T(0)) {}
  Vector(std::initializer_list<T> init) : coords_(init) {}
  explicit Vector(std::vector<T> coords) : coords_(std::move(coords)) {}

  std::size_t dim() const { return coords_.size(); }
  T& operator[](std::size_t i) { return coords_[i]; }
  const T& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const T> coords() const { return coords_; }

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  Vector& operator+=(const Vector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Vector& operator*=(const T& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }
  Vector& operator/=(const T& s) {
    for (auto& c : coords_) c /= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, const T& s) { return a *= s; }
  friend Vector operator*(const T& s, Vector a) { return a *= s; }
  friend Vector operator/(Vector a, const T& s) { return a /= s; }
  friend Vector operator-(Vector a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }

  bool operator==(const Vector& o) const { return coords_ == o.coords_; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }

 private:
  void check_dim(const Vector& o) const {
    if (o.dim() != dim()) throw DimensionMismatch(dim(), o.dim());
  }

  std::vector<T> coords_;
};

using VectorD = Vector<double>;
using VectorQ = Vector<Rational>;

template <Scalar T>
T dot(const Vector<T>& a, const Vector<T>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  T s(0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

template <Scalar T>
T norm_sq(const Vector<T>& a) {
  return dot(a, a);
}

inline double norm(const VectorD& a) { return std::sqrt(norm_sq(a)); }
inline double norm(const VectorQ& a) { return std::sqrt(to_double(norm_sq(a))); }

inline double distance(const VectorD& a, const VectorD& b) { return norm(a - b); }

VectorD to_float(const VectorQ& v);
VectorQ to_exact(const VectorD& v);  // exact binary value of each double

/// e_i in R^dim (0-based i).
template <Scalar T>
Vector<T> unit_vector(std::size_t dim, std::size_t i) {
  Vector<T> e(dim);
  e[i] = T(1);
  return e;
}

}  // namespace fpi
