#include <doctest.h>

#include <cmath>
#include <random>

#include "fpi/balance.hpp"
#include "fpi/iteration.hpp"
#include "fpi/planar.hpp"
#include "fpi/polar.hpp"

using namespace fpi;

namespace {

PointSet planar(std::initializer_list<double> angles) {
  std::vector<VectorD> pts;
  for (double a : angles) pts.push_back(VectorD{std::cos(a), std::sin(a)});
  return PointSet::from_float(2, std::move(pts));
}

}  // namespace

TEST_CASE("base gap frame") {
  // Gaps pi/2, 5pi/6, 2pi/3; the widest starts at pi/2.
  const auto ps = planar({0.0, kPi / 2, 4 * kPi / 3});
  const auto gaps = angular_gaps(ps);
  REQUIRE(gaps.size() == 3);
  const auto f = base_gap_frame(ps);
  CHECK(f.phi == doctest::Approx((kPi - 5 * kPi / 6) / 2));
  CHECK(f.gap_start == 1);
  const VectorD xn = f.to_frame(ps[f.gap_start]);
  CHECK(xn[0] == doctest::Approx(-std::cos(f.phi)));
  CHECK(xn[1] == doctest::Approx(-std::sin(f.phi)));
  const VectorD x1 = f.to_frame(ps[f.permutation.front()]);
  CHECK(x1[0] == doctest::Approx(std::cos(f.phi)));
  CHECK(x1[1] == doctest::Approx(-std::sin(f.phi)));
  CHECK(f.permutation.back() == f.gap_start);

  CHECK_THROWS_AS(base_gap_frame(planar({0.0, 0.1, 0.2})), std::invalid_argument);
  // A gap of exactly pi is allowed and gives phi = 0.
  CHECK(base_gap_frame(planar({0.0, kPi / 2, kPi})).phi == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("frame is rotation invariant") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto ps = random_gapped_planar(6, seed);
    const double turn = 0.37 * double(seed);
    std::vector<VectorD> rot;
    for (const auto& p : ps.points()) rot.push_back(rotate_2d(p, turn));
    const auto f = base_gap_frame(ps);
    const auto g = base_gap_frame(PointSet::from_float(2, rot));
    CHECK(f.phi == doctest::Approx(g.phi));
    CHECK(f.permutation == g.permutation);
    for (std::size_t j = 0; j < ps.size(); ++j) CHECK(distance(f.to_frame(ps[j]), g.to_frame(rot[j])) <= 1e-9);
  }
}

TEST_CASE("region examples") {
  const RegionSpec spec(0.1);
  CHECK(spec.phibar == doctest::Approx(kPi / 6 - 0.1));
  CHECK(spec.lambda_min == doctest::Approx(std::sqrt(3.0) / (2 * std::cos(0.1))));

  auto tags = region_membership(spec, VectorD{0, 0});
  CHECK(tags.Q);
  CHECK(tags.U);
  CHECK_FALSE(tags.R);

  tags = region_membership(spec, spec.x1());
  CHECK(tags.R);
  CHECK(tags.U);

  tags = region_membership(spec, VectorD{0.0, 0.99});
  CHECK(tags.P);
  CHECK(tags.Pplus);
  CHECK(tags.Pminus);
  CHECK(tags.U);

  tags = region_membership(spec, VectorD{0.0, 1.3});
  CHECK(tags.T);
  CHECK_FALSE(tags.U);

  tags = region_membership(spec, VectorD{0.0, 0.5});
  CHECK(tags.Q);
  CHECK_FALSE(tags.P);

  // R is open and unbounded below.
  CHECK(region_membership(spec, VectorD{0, -2}).R);
  CHECK_FALSE(region_membership(spec, VectorD{0.9, 1.2}).U);
}

TEST_CASE("regions partition the disk") {
  const RegionSpec spec(0.2);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int t = 0; t < 20000; ++t) {
    const VectorD u{uni(rng), uni(rng)};
    if (norm(u) > 1 - 1e-9 || norm(u) < 1e-9) continue;
    const auto tags = region_membership(spec, u);
    const double a = u[0], b = u[1];
    const double floor = std::abs(a) * std::tan(spec.phi);
    if (b < floor - 1e-9) {
      CHECK(tags.R);
      CHECK_FALSE(tags.Q);
    } else if (b > floor + spec.lambda_min + 1e-9) {
      CHECK(tags.P);
      CHECK_FALSE(tags.Q);
    } else if (b > floor + 1e-9 && b < floor + spec.lambda_min - 1e-9) {
      CHECK(tags.Q);
      CHECK_FALSE(tags.P);
      CHECK_FALSE(tags.R);
    }
    if (tags.P) CHECK((tags.Pplus || tags.Pminus));
  }
}

TEST_CASE("lemma audit on gapped sets") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto ps = random_gapped_planar(3 + seed % 6, seed);
    for (auto pol : {TiePolicy::LowestIndex, TiePolicy::Random, TiePolicy::Greedy}) {
      const auto tr = run_iteration(ps, 300, {pol, seed});
      const auto v = lemma_membership_audit(ps, tr);
      CHECK(v.empty());
      if (!v.empty()) {
        INFO("seed " << seed << " claim " << v.front().claim << " step " << v.front().step);
        CHECK(false);
      }
      CHECK(gamma_bound_audit(ps, tr).empty());
    }
  }
}

TEST_CASE("lemma audit refuses sets without a wide gap") {
  const auto ps = PointSet::from_float(2, {VectorD{0, 1}, VectorD{1, 0}});
  // Gap of 3pi/2 exceeds pi: the set is 0-balanced.
  CHECK_THROWS_AS(lemma_membership_audit(ps, run_iteration(ps, 5)), std::invalid_argument);
  const auto hex = regular_polygon(6);
  CHECK_THROWS_AS(lemma_membership_audit(hex, run_iteration(hex, 5)), std::invalid_argument);
}

TEST_CASE("T and U are disjoint") {
  for (double phi : {0.0, 0.1, 0.3, kPi / 6 - 1e-6}) {
    const RegionSpec spec(phi);
    const auto rep = disjointness_audit(spec, 20000, 9);
    CHECK(rep.samples == 20000);
    CHECK(rep.in_U.empty());
    CHECK(rep.angle_failures.empty());
  }
  CHECK_THROWS_AS(disjointness_audit(RegionSpec(kPi / 6), 10, 1), std::invalid_argument);
}

TEST_CASE("disjointness negative control") {
  const RegionSpec spec(0.1);
  CHECK_THROWS_AS(require_in_T(spec, VectorD{0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(disjointness_check_points(spec, {VectorD{0.0, 0.5}}), std::invalid_argument);
  CHECK(disjointness_check_points(spec, {VectorD{0.0, 1.2}, VectorD{0.1, 1.35}}).empty());
  for (const auto& p : sample_T(spec, 500, 3)) CHECK_NOTHROW(require_in_T(spec, p));
}

TEST_CASE("sqrt2 bound") {
  std::vector<PointSet> corpus;
  for (std::size_t m = 3; m <= 9; ++m) corpus.push_back(regular_polygon(m, 0.1 * double(m)));
  for (std::uint64_t s = 0; s < 40; ++s) corpus.push_back(random_planar(3 + s % 7, s));
  const auto rep = sqrt2_bound_audit(corpus, 200, {TiePolicy::LowestIndex, TiePolicy::Random, TiePolicy::Greedy}, 1, 2);
  CHECK(rep.violations.empty());
  CHECK(rep.max_norm <= std::sqrt(2.0) + 1e-9);

  const auto tri = sqrt2_bound_audit({regular_polygon(3)}, 50, {TiePolicy::LowestIndex}, 0);
  CHECK(tri.max_norm == doctest::Approx(1.0));
  const auto a21 = PointSet::from_float(2, {VectorD{1, 0}, VectorD{0, 1}, VectorD{-1, 0}});
  const auto sq = sqrt2_bound_audit({a21}, 50, {TiePolicy::Greedy}, 0);
  CHECK(sq.max_norm == doctest::Approx(std::sqrt(2.0)));

  const auto zero = PointSet::from_float(2, {VectorD{0, 1}, VectorD{1, 0}});
  CHECK_THROWS_AS(sqrt2_bound_audit({zero}, 10, {TiePolicy::LowestIndex}, 0), std::invalid_argument);
}

TEST_CASE("planar generators") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto p = random_planar(4, s);
    CHECK(validate(p).usable());
    CHECK(classify_balance(p).b >= 1);
    const auto g = random_gapped_planar(5, s);
    double widest = 0;
    for (const auto& [i, sz] : angular_gaps(g)) widest = std::max(widest, sz);
    CHECK(widest > 2 * kPi / 3);
    CHECK(widest <= kPi + 1e-12);
  }
  const auto hex = regular_polygon(6);
  CHECK(hex.size() == 6);
  CHECK(hex[0][0] == doctest::Approx(1.0));
}

TEST_CASE("law of cosines on planar traces") {
  const auto ps = random_gapped_planar(5, 77);
  CHECK(law_of_cosines_check(run_iteration(ps, 100)));
}
