#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpi/point_set.hpp"

namespace fpi {

/// Rejected construction parameters; the message states the admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Target norm not reachable with the given construction parameters.
class InfeasibleTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// l+1 unit vectors in R^l with pairwise products -1/l, built recursively
/// from {+1, -1}. Rational mode yields exact coordinates for l = 1 and an
/// exact Gram matrix (float coordinates) otherwise.
PointSet equidistant(std::size_t l, NumericMode mode = NumericMode::Float);
std::vector<VectorD> equidistant_points(std::size_t l);

/// {e_1..e_d, -e_1..-e_m}, exact coordinates.
PointSet family_A(std::size_t d, std::size_t m, NumericMode mode = NumericMode::Rational);

/// Point order x_0, x_1..x_c, x_{c+1}..x_{d+1} with c = d - b. The b-part
/// occupies the first b coordinates, the tilted simplex the last c with v
/// the final axis.
PointSet family_B(std::size_t d, std::size_t b, double epsilon, double phi);

/// Point order x_0, x_1..x_d, x_{d+1}; v is the last axis.
PointSet family_C(std::size_t d, double epsilon, double mu, double phi);

/// 1 - c/(c-1) cos^2(epsilon): common product of the tilted points.
double b_sigma(std::size_t c, double epsilon);
/// Largest epsilon for which -1/(c-1) < sigma < 0.
double b_epsilon_max(std::size_t c);

struct BCeilings {
  double a1 = 0.0;  // block-start condition
  double a2 = 0.0;  // last in-block condition
  // First in-block condition. sigma < 0 makes it the sharpest in-block one;
  // it coincides with a2 for c = 2.
  double in_block = 0.0;
  double min() const { return a1 < in_block ? a1 : in_block; }
};
BCeilings b_max_feasible_i(std::size_t d, std::size_t b, double epsilon, double phi);

struct BMBounds {
  double a1 = 0.0;
  double a2 = 0.0;
  double in_block = 0.0;
  double min() const;
};
BMBounds b_m_bounds(std::size_t d, std::size_t b, double epsilon, double phi);

/// Smallest k >= 0 with ||x_0 + k(x_1+..+x_c)||^2 >= M. Throws
/// InfeasibleTarget when M exceeds any M-bound.
std::size_t b_steps_for_target(std::size_t d, std::size_t b, double epsilon, double phi, double m);
/// ||x_0 + k(x_1+..+x_c)||^2 in closed form.
double b_norm_sq(std::size_t d, std::size_t b, double epsilon, double phi, std::size_t k);
/// Largest epsilon with every M-bound at least margin * M.
double b_epsilon_for_target(std::size_t d, std::size_t b, double phi, double m, double margin = 1.2);

double c_max_feasible_i(double epsilon, double mu, double phi);
double c_m_bound(double epsilon, double mu, double phi);
/// Smallest k >= 0 with ||x_0 + k(x_1 + x_{d+1})||^2 >= M.
std::size_t c_steps_for_target(double epsilon, double mu, double phi, double m);
double c_norm_sq(double epsilon, double mu, double phi, std::size_t k);
/// Largest mu (epsilon fixed) with the M-bound at least margin * M.
double c_mu_for_target(double epsilon, double phi, double m, double margin = 1.2);
/// Largest epsilon (mu = 3 epsilon) with the M-bound at least margin * M.
double c_epsilon_for_target_3eps(double phi, double m, double margin = 1.2);

/// e_{m+1}, .., e_d, then -e_1 (indices into family_A order).
std::vector<std::size_t> a_schedule(std::size_t d, std::size_t m);
/// x_0, then x_1..x_c repeated; `blocks` full blocks.
std::vector<std::size_t> b_schedule(std::size_t d, std::size_t b, std::size_t blocks);
/// x_0, then x_{d+1}, x_1 alternating; ends at x_0 + k(x_1 + x_{d+1}).
std::vector<std::size_t> c_schedule(std::size_t d, std::size_t k);

enum class ScheduleFamily { Generic, A, B, C };

struct ScheduleViolation {
  std::size_t step = 0;          // index into the schedule
  std::size_t prescribed = 0;
  std::size_t preferred = 0;     // a point with strictly smaller product
  std::string condition;
};

struct ScheduleReport {
  bool ok = true;
  std::optional<ScheduleViolation> first_violation;
  std::size_t legal_steps = 0;  // steps replayed before the first violation
  double max_norm = 0.0;        // over the legal prefix
  double final_norm = 0.0;      // ||u|| after the legal prefix
};

/// Replays the schedule from u = 0 and stops at the first step whose
/// prescribed point is not a minimizer of <x, u> (within tie_tol).
ScheduleReport verify_prescribed_schedule(const PointSet& ps, const std::vector<std::size_t>& schedule,
                                          ScheduleFamily family = ScheduleFamily::Generic,
                                          double tie_tol = 1e-9);

/// Every violating step, replaying the prescribed points regardless.
std::vector<ScheduleViolation> schedule_violations(const PointSet& ps, const std::vector<std::size_t>& schedule,
                                                   ScheduleFamily family = ScheduleFamily::Generic,
                                                   double tie_tol = 1e-9);

/// Normalized Gaussian directions, resampled until balanced.
PointSet random_balanced(std::size_t d, std::size_t n, std::uint64_t seed, std::size_t budget = 100000);

struct Perturbed {
  PointSet set;
  std::size_t b = 0;
};

/// Adds Gaussian noise of the given magnitude to each point and projects back
/// to the sphere. Magnitude 0 returns the input unchanged.
Perturbed perturb(const PointSet& ps, double magnitude, std::uint64_t seed);

/// Planar only: rotates point `index` counterclockwise by `angle`.
PointSet rotate_point(const PointSet& ps, std::size_t index, double angle);

}  // namespace fpi
