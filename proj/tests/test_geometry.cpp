#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fpi/generators.hpp"
#include "fpi/io.hpp"
#include "fpi/point_set.hpp"
#include "fpi/polar.hpp"

using namespace fpi;

TEST_CASE("dot products") {
  CHECK(dot(VectorD{1, 0}, VectorD{0, 1}) == 0.0);
  CHECK(dot(VectorD{1, 0}, VectorD{1, 0}) == 1.0);
  CHECK_THROWS_AS(dot(VectorD{1, 0}, VectorD{1, 0, 0}), DimensionMismatch);

  const auto tri = equidistant(2, NumericMode::Rational);
  const auto& g = *tri.exact_gram();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) CHECK(g(i, j) == Rational(-1, 2));
  CHECK(dot(tri[0], tri[1]) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("norms") {
  CHECK(norm(VectorD{0, 0}) == 0.0);
  CHECK(norm(VectorD{1, 1}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(norm(VectorD{3.0 / 5, 4.0 / 5}) == doctest::Approx(1.0));
  const VectorQ q{Rational(3, 5), Rational(4, 5)};
  CHECK(norm_sq(q) == Rational(1));
  CHECK(norm_sq(q) == dot(q, q));
}

TEST_CASE("exact arithmetic stays exact") {
  const VectorQ a{Rational(1, 3), Rational(-2, 7)};
  const VectorQ b{Rational(5, 11), Rational(1, 13)};
  const VectorQ s = a + b - b;
  CHECK(s == a);
  CHECK(dot(a, b) == Rational(1, 3) * Rational(5, 11) + Rational(-2, 7) * Rational(1, 13));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(to_string(Rational(6, 4)) == "3/2");
}

TEST_CASE("float norm agrees with dot") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 1000; ++t) {
    VectorD v{g(rng), g(rng), g(rng)};
    CHECK(std::abs(norm(v) * norm(v) - dot(v, v)) <= 1e-12 * std::max(1.0, dot(v, v)));
  }
}

TEST_CASE("validate") {
  const auto ok = validate(PointSet::from_float(2, {VectorD{1, 0}, VectorD{0, 1}}));
  CHECK(ok.usable());

  const auto flat = validate(PointSet::from_float(2, {VectorD{1, 0}, VectorD{-1, 0}}));
  CHECK_FALSE(flat.usable());
  CHECK(flat.rank == 1);
  CHECK(flat.on_sphere);

  const auto shrunk = validate(PointSet::from_float(2, {VectorD{0.9, 0}}));
  CHECK_FALSE(shrunk.on_sphere);
  CHECK_FALSE(shrunk.usable());

  const auto near = validate(PointSet::from_float(2, {VectorD{1 + 5e-13, 0}, VectorD{0, 1}}));
  CHECK(near.on_sphere);
  const auto off = validate(PointSet::from_float(2, {VectorD{1 + 5e-12, 0}, VectorD{0, 1}}));
  CHECK_FALSE(off.on_sphere);

  CHECK_THROWS_AS(validate(PointSet::from_float(2, {})), std::invalid_argument);
  CHECK_THROWS_AS(validate(PointSet::from_float(1, {VectorD{1.0}})), std::invalid_argument);
  CHECK_THROWS_AS(require_valid(PointSet::from_float(2, {VectorD{1, 0}, VectorD{-1, 0}})), std::invalid_argument);

  const auto exact = validate(PointSet::from_rational(2, {VectorQ{Rational(3, 5), Rational(4, 5)}, VectorQ{0, 1}}));
  CHECK(exact.usable());
  const auto exact_off = validate(PointSet::from_rational(2, {VectorQ{Rational(3, 5), Rational(4, 6)}, VectorQ{0, 1}}));
  CHECK_FALSE(exact_off.on_sphere);
}

TEST_CASE("polar coordinates") {
  auto p = to_polar(VectorD{0, 1});
  CHECK(p.r == doctest::Approx(1.0));
  CHECK(p.phi == doctest::Approx(kPi / 2));
  p = to_polar(VectorD{1, 1});
  CHECK(p.r == doctest::Approx(std::sqrt(2.0)));
  CHECK(p.phi == doctest::Approx(kPi / 4));
  CHECK(to_polar(VectorD{0, -1}).phi == doctest::Approx(1.5 * kPi));

  const double phi = 0.3;
  const VectorD x1 = from_polar(PolarPoint(1.0, kTwoPi - phi));
  CHECK(x1[0] == doctest::Approx(std::cos(phi)));
  CHECK(x1[1] == doctest::Approx(-std::sin(phi)));

  CHECK_THROWS_AS(to_polar(VectorD{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(to_polar(VectorD{1, 0, 0}), std::invalid_argument);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  int bad = 0;
  for (int t = 0; t < 10000; ++t) {
    VectorD v{g(rng), g(rng)};
    const auto pp = to_polar(v);
    if (pp.phi < 0 || pp.phi >= kTwoPi) ++bad;
    if (distance(from_polar(pp), v) > 1e-12 * std::max(1.0, norm(v))) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("angle arcs wrap around") {
  CHECK(reduce_angle(-0.1) == doctest::Approx(kTwoPi - 0.1));
  CHECK(in_open_arc(0.05, kPi - 0.1, kTwoPi + 0.1));
  CHECK(in_open_arc(1.5 * kPi, kPi - 0.1, kTwoPi + 0.1));
  CHECK_FALSE(in_open_arc(kPi / 2, kPi - 0.1, kTwoPi + 0.1));
  CHECK_FALSE(in_open_arc(kPi - 0.1, kPi - 0.1, kTwoPi + 0.1));
  CHECK(in_closed_arc(kPi - 0.1, kPi - 0.1, kTwoPi + 0.1));
}

TEST_CASE("point-set files round-trip") {
  const auto a = family_A(3, 2);
  const auto back = point_set_from_json(point_set_to_json(a));
  CHECK(back.mode() == NumericMode::Rational);
  CHECK(back.exact_points() == a.exact_points());

  const auto tri = equidistant(3, NumericMode::Rational);
  const auto tri_back = point_set_from_json(point_set_to_json(tri));
  CHECK(*tri_back.exact_gram() == *tri.exact_gram());

  const auto f = random_balanced(3, 6, 5);
  const auto f_back = point_set_from_json(nlohmann::json::parse(point_set_to_json(f).dump()));
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f_back[i] == f[i]);

  const auto j = nlohmann::json::parse(R"({"d":2,"mode":"rational","points":[["3/5","4/5"],[0,1]]})");
  const auto q = point_set_from_json(j);
  CHECK(q.exact_points()[0][0] == Rational(3, 5));

  const auto csv = point_set_from_csv("x,y\n# comment\n1,0\n0,1\n\n-1,0\n", NumericMode::Float);
  CHECK(csv.size() == 3);
  CHECK(csv[2][0] == -1.0);
  CHECK(format_double(0.1) == "0.10000000000000001");
}
