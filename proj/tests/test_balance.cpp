#include <doctest.h>

#include <cmath>
#include <random>

#include "fpi/balance.hpp"
#include "fpi/polar.hpp"
#include "fpi/generators.hpp"
#include "fpi/simplex.hpp"
#include "oracles.hpp"

using namespace fpi;

namespace {

std::vector<VectorD> pts(std::initializer_list<VectorD> l) { return std::vector<VectorD>(l); }

}  // namespace

TEST_CASE("simplex solver") {
  // max x + y, x + 2y + s = 4, 3x + y + t = 6
  DenseMatrix<double> a(2, 4);
  a(0, 0) = 1, a(0, 1) = 2, a(0, 2) = 1;
  a(1, 0) = 3, a(1, 1) = 1, a(1, 3) = 1;
  std::vector<double> b{4, 6}, c{1, 1, 0, 0};
  auto r = maximize(a, b, c);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(2.8));

  DenseMatrix<double> inf(1, 2);
  inf(0, 0) = 1, inf(0, 1) = 1;
  std::vector<double> neg{-1}, c2{0, 0};
  CHECK(maximize(inf, neg, c2).status == LpResult::Status::Infeasible);

  DenseMatrix<double> un(1, 2);
  un(0, 0) = 1, un(0, 1) = -1;
  std::vector<double> zero{0}, c3{1, 0};
  CHECK(maximize(un, zero, c3).status == LpResult::Status::Unbounded);
}

TEST_CASE("min-norm point") {
  const auto e = pts({VectorD{1, 0}, VectorD{0, 1}});
  const auto p = min_norm_point(e);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));
  CHECK(norm(p) == doctest::Approx(oracle::min_norm_grid(e)).epsilon(1e-6));
  CHECK(min_norm_certificate(e, p));

  CHECK(norm(min_norm_point(pts({VectorD{1, 0}, VectorD{-1, 0}, VectorD{0, 1}, VectorD{0, -1}}))) <= 1e-10);
  CHECK(norm(min_norm_point(equidistant(2))) <= 1e-10);

  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 3;
    auto raw = oracle::random_points(3, d, rng);
    std::vector<VectorD> s;
    for (auto& v : raw) s.push_back(v / norm(v));
    const auto q = min_norm_point(s);
    CHECK(min_norm_certificate(s, q));
    CHECK(norm(q) == doctest::Approx(oracle::min_norm_grid(s, 800)).epsilon(2e-3).scale(1.0));
  }
  for (int t = 0; t < 300; ++t) {
    auto raw = oracle::random_points(3 + t % 15, 2 + t % 5, rng);
    std::vector<VectorD> s;
    for (auto& v : raw) s.push_back(v / norm(v) + VectorD(std::vector<double>(v.dim(), 0.3)));
    CHECK(min_norm_certificate(s, min_norm_point(s)));
  }
}

TEST_CASE("classification examples") {
  auto r = classify_balance(family_A(2, 1));
  CHECK(r.b == 1);
  CHECK(r.delta == 0.0);
  CHECK(r.support == std::vector<std::size_t>{0, 2});

  r = classify_balance(family_A(2, 2));
  CHECK(r.b == 2);
  CHECK(r.delta == doctest::Approx(std::sqrt(0.5)));

  r = classify_balance(PointSet::from_float(2, {VectorD{1, 0}, VectorD{0, 1}}));
  CHECK(r.b == 0);
  CHECK(r.support.empty());
  CHECK(r.delta == doctest::Approx(-std::sqrt(0.5)));

  CHECK(classify_balance(family_C(3, 0.0, 0.1, kPi / 6)).b == 2);
  CHECK(classify_balance(family_A(4, 2)).b == 2);
  CHECK(delta(family_A(4, 2)) == 0.0);
  CHECK(delta(equidistant(2)) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(delta(equidistant(3)) == doctest::Approx(1.0 / 3).epsilon(1e-9));

  // Duplicates do not change the class.
  CHECK(classify_balance(pts({VectorD{1, 0}, VectorD{1, 0}, VectorD{0, 1}, VectorD{-1, 0}})).b == 1);

  const auto j = to_json(classify_balance(family_A(2, 1)));
  CHECK(j["b"] == 1);
  CHECK(j["support"].size() == 2);
}

TEST_CASE("delta agrees with sphere sampling") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 12; ++t) {
    const std::size_t d = 2 + t % 2;
    auto raw = oracle::random_points(d + 1 + t % 4, d, rng);
    std::vector<VectorD> s;
    for (auto& v : raw) s.push_back(v / norm(v));
    if (numeric_rank(s) < d) continue;
    CHECK(delta(s) == doctest::Approx(oracle::delta_by_sampling(s, 200000)).epsilon(2e-3).scale(1.0));
  }
}

TEST_CASE("trichotomy and rotation invariance") {
  std::mt19937_64 rng(8);
  int counts[3] = {0, 0, 0};
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 2 + t % 3;
    auto raw = oracle::random_points(d + t % 4, d, rng);
    std::vector<VectorD> s;
    for (auto& v : raw) s.push_back(v / norm(v));
    if (numeric_rank(s) < d) continue;
    const auto r = classify_balance(s);
    const bool a = r.delta < 0 && r.b == 0;
    const bool b = r.delta == 0 && r.b >= 1 && r.b + 1 <= d;
    const bool c = r.delta > 0 && r.b == d;
    CHECK(int(a) + int(b) + int(c) == 1);
    counts[a ? 0 : (b ? 1 : 2)]++;
    if (t % 10 == 0) {
      const auto q = oracle::random_orthogonal(d, rng);
      std::vector<VectorD> rot;
      for (const auto& v : s) rot.push_back(oracle::apply(q, v));
      const auto rr = classify_balance(rot);
      CHECK(rr.b == r.b);
      CHECK(std::abs(rr.delta - r.delta) <= 1e-9);
    }
  }
  CHECK(counts[0] > 0);
  CHECK(counts[2] > 0);
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::size_t m = 1; m < d; ++m) {
      const auto r = classify_balance(family_A(d, m));
      CHECK(r.delta == 0.0);
      CHECK(r.b == m);
    }
}

TEST_CASE("seb equivalence") {
  CHECK(seb_equivalence_check(family_A(2, 2)));
  CHECK(seb_equivalence_check(PointSet::from_float(2, {VectorD{1, 0}, VectorD{0, 1}})));
  CHECK(seb_equivalence_check(equidistant(3)));
  CHECK(seb_equivalence_check(family_A(3, 1)));
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(seb_equivalence_check(random_balanced(3, 5, s)));
}
