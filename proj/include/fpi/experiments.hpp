#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpi/generators.hpp"
#include "fpi/planar.hpp"
#include "fpi/reachable.hpp"

namespace fpi {

/// 0, 1, 2, 4, 6, 9, 12, 16, 20, 25, 30, 36, 42 for d = 0..12.
std::optional<long> published_a(std::size_t d);

struct TableARow {
  std::size_t d = 0;
  ClosureStatus status = ClosureStatus::Closed;
  std::optional<long> a;  // d * u*^2 when it is an integer
  Rational ustar_sq;
  double ustar = 0.0;
  std::size_t count = 0;
  double seconds = 0.0;
};

/// Exact reachable-set search on d+1 equidistant points. Budget exhaustion
/// is recorded in the row, not thrown.
TableARow table_a_row(std::size_t d, const ReachableOptions& opts = {});

/// {e_2, e_1 turned clockwise by `tilt`, -e_1}: balanced, and the lowest-index
/// trace reaches ||u||^2 = 2 - 2 sin(tilt).
PointSet tilted_a21(double tilt);

/// Random planar sets that are not 0-balanced (3..10 points) plus the
/// tilted witness as the last entry.
std::vector<PointSet> sqrt2_corpus(std::size_t sets, std::uint64_t seed);

struct LemmaCorpusReport {
  std::size_t sets = 0;
  std::size_t traces = 0;
  double max_norm = 0.0;
  std::vector<AuditViolation> violations;  // sorted by set, then step
};

/// Random planar sets with a gap in (2pi/3, pi], every tie policy, membership
/// and gamma audits on each trace.
LemmaCorpusReport lemma_corpus_audit(std::size_t sets, std::size_t steps, std::uint64_t seed, unsigned threads = 1);

struct GrowthResult {
  std::string family;
  nlohmann::json params;
  double target = 0.0;  // sqrt(M)
  double achieved = 0.0;
  std::size_t steps = 0;
  ScheduleReport report;
  bool ok() const { return report.ok && achieved >= target - 1e-9; }
};

/// B_{d,b}: epsilon defaults to the largest value meeting every M-bound with margin.
GrowthResult growth_demo_B(std::size_t d, std::size_t b, double phi, double m, std::optional<double> epsilon = {});
/// C_d: with three_eps, mu = 3 epsilon and epsilon from the M-bound; otherwise
/// epsilon defaults to 0 and mu is taken from the M-bound unless given.
GrowthResult growth_demo_C(std::size_t d, double phi, double m, std::optional<double> epsilon = {},
                           std::optional<double> mu = {}, bool three_eps = false);

nlohmann::json to_json(const TableARow& row);
nlohmann::json to_json(const GrowthResult& g);
nlohmann::json to_json(const ScheduleReport& r);

}  // namespace fpi
