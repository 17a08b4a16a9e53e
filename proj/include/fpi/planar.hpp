#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpi/iteration.hpp"
#include "fpi/point_set.hpp"

namespace fpi {

/// Rotation and renumbering that put the chosen gap symmetric about the
/// downward axis: x_1 at angle 2pi - phi, x_n at pi + phi.
struct BaseGapFrame {
  double phi = 0.0;       // half of pi minus the gap size
  double rotation = 0.0;  // counterclockwise angle applied to the input
  std::vector<std::size_t> permutation;  // permutation[k] = input index of x_{k+1}
  std::size_t gap_start = 0;  // input index of the point where the gap begins (x_n)

  VectorD to_frame(const VectorD& v) const;
};

/// Gaps between angularly consecutive points, each as (start index, size),
/// ordered counterclockwise from the smallest start angle.
std::vector<std::pair<std::size_t, double>> angular_gaps(const PointSet& ps);

/// Frames the largest gap (ties: smallest start angle) or the gap starting at
/// point `gap_start`. Throws std::invalid_argument for a 0-balanced set.
BaseGapFrame base_gap_frame(const PointSet& ps, std::optional<std::size_t> gap_start = std::nullopt);

struct RegionSpec {
  double phi = 0.0;
  double phibar = 0.0;      // pi/6 - phi
  double lambda_min = 0.0;  // sqrt(3) / (2 cos phi)

  explicit RegionSpec(double phi_);
  VectorD x1() const;  // (cos phi, -sin phi)
  VectorD xn() const;  // (-cos phi, -sin phi)
};

struct RegionTags {
  bool T = false, R = false, Q = false, P = false, Pplus = false, Pminus = false;
  bool TnPplus = false, T1Pminus = false, U = false;

  std::vector<std::string> names() const;
};

/// Region tags of a frame point. `slack` relaxes every defining inequality.
RegionTags region_membership(const RegionSpec& spec, const VectorD& u, double slack = 0.0);

struct AuditViolation {
  std::size_t set = 0;  // corpus position
  std::size_t frame = 0;  // which gap framing (input index of its start point)
  std::size_t step = 0;
  std::string claim;
  VectorD u;
};

/// Every u_j of the trace lies in U for each framing of a gap larger than
/// 2pi/3; also the transition claims for j >= 1 (u_0 = 0 sits in Q but
/// u_1 may be any point of X). Throws std::invalid_argument when no gap
/// exceeds 2pi/3.
std::vector<AuditViolation> lemma_membership_audit(const PointSet& ps, const IterationTrace& trace,
                                                   double slack = 1e-9);

/// gamma_j >= pi/2 + phi (largest gap) at every step with u_j != 0.
std::vector<AuditViolation> gamma_bound_audit(const PointSet& ps, const IterationTrace& trace, double tol = 1e-9);

/// Uniform samples from the (r, angle) box of T.
std::vector<VectorD> sample_T(const RegionSpec& spec, std::size_t samples, std::uint64_t seed);

/// Throws std::invalid_argument unless u is in T.
void require_in_T(const RegionSpec& spec, const VectorD& u);

struct DisjointReport {
  std::size_t samples = 0;
  std::vector<VectorD> in_U;           // T samples found in U
  std::vector<VectorD> angle_failures;  // P+ samples whose translate by x_n has arg < pi/2 + phibar
};

/// Samples T and checks none lands in U; samples P+ and checks the
/// translate by x_n stays at argument >= pi/2 + phibar. Needs 0 <= phi < pi/6.
DisjointReport disjointness_audit(const RegionSpec& spec, std::size_t samples, std::uint64_t seed);

/// Same check on caller-supplied T points (each goes through require_in_T).
std::vector<VectorD> disjointness_check_points(const RegionSpec& spec, const std::vector<VectorD>& points);

struct Sqrt2Report {
  double max_norm = 0.0;
  std::size_t witness = 0;  // corpus position of the maximizing set
  std::vector<AuditViolation> violations;  // traces exceeding sqrt2 + 1e-9
};

/// Runs every policy on every set and records the largest ||u_i||. Sets that
/// are 0-balanced are rejected with std::invalid_argument.
Sqrt2Report sqrt2_bound_audit(const std::vector<PointSet>& corpus, std::size_t steps,
                              const std::vector<TiePolicy>& policies, std::uint64_t seed, unsigned threads = 1);

/// Random planar set that is not 0-balanced.
PointSet random_planar(std::size_t n, std::uint64_t seed);
/// Random planar set whose largest gap lies in (2pi/3, pi].
PointSet random_gapped_planar(std::size_t n, std::uint64_t seed);
/// Regular m-gon, rotated by `offset`.
PointSet regular_polygon(std::size_t m, double offset = 0.0);

nlohmann::json to_json(const AuditViolation& v);

}  // namespace fpi
