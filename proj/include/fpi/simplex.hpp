#pragma once

#include <span>
#include <vector>

#include "fpi/matrix.hpp"

namespace fpi {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

/// maximize c^T x  subject to  A x = b, x >= 0.
///
/// Dense two-phase tableau simplex with Bland's rule, sized for the small
/// programs in this library (tens of variables, a handful of rows).
LpResult maximize(const DenseMatrix<double>& a, std::span<const double> b, std::span<const double> c,
                  double tol = 1e-11);

}  // namespace fpi
