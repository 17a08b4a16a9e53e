#include "fpi/vector.hpp"

namespace fpi {

VectorD to_float(const VectorQ& v) {
  VectorD out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = to_double(v[i]);
  return out;
}

VectorQ to_exact(const VectorD& v) {
  VectorQ out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = Rational(v[i]);
  return out;
}

}  // namespace fpi
