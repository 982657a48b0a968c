#include <doctest.h>

#include <cmath>
#include <random>

#include "mpland/bifiltration.hpp"
#include "mpland/error.hpp"
#include "oracles.hpp"

using namespace mpland;

namespace {

std::vector<double> equilateral(double d) {
  return {0, d, d, d, 0, d, d, d, 0};
}

long index_of(const BifilteredComplex& c, std::vector<int> vs) { return c.find(vs); }

}  // namespace

TEST_SUITE("bifiltration") {

TEST_CASE("function rips on three equidistant points") {
  const auto d = equilateral(1.0);
  const std::vector<double> zeros{0, 0, 0};
  const auto c = build_function_rips(d, zeros, 1.0, 2);
  CHECK(c.size() == 7);
  for (std::size_t s = 0; s < c.size(); ++s) {
    REQUIRE(c.grades(s).size() == 1);
    if (c.dim(s) >= 1) CHECK(c.grades(s)[0] == Bigrade{1.0, 0.0});
  }
  CHECK(validate_monotone(c).empty());

  const std::vector<double> values{0, 1, 2};
  const auto c2 = build_function_rips(d, values, 1.0, 2);
  const long e12 = index_of(c2, {1, 2});
  REQUIRE(e12 >= 0);
  CHECK(c2.grades(e12)[0] == Bigrade{1.0, 2.0});
}

TEST_CASE("function rips threshold excludes long edges") {
  const std::vector<double> d{0, 5, 5, 0};
  const std::vector<double> v{0, 0};
  const auto c = build_function_rips(d, v, 1.0, 2);
  CHECK(c.size() == 2);
  CHECK(c.of_dim(1).empty());
}

TEST_CASE("function rips rejects bad input") {
  const std::vector<double> v{0, 0};
  CHECK_THROWS_AS(build_function_rips(std::vector<double>{0, 1, 2, 0}, v, 5.0, 1), InputError);
  CHECK_THROWS_AS(build_function_rips(std::vector<double>{0, NAN, NAN, 0}, v, 5.0, 1), InputError);
  CHECK_THROWS_AS(build_function_rips(std::vector<double>{0, 1, 1, 0}, v, 5.0, -1), InputError);
  CHECK_THROWS_AS(build_function_rips(std::vector<double>{0, 1, 1, 0}, std::vector<double>{0}, 5.0, 1),
                  InputError);
}

TEST_CASE("closure bicomplex grades") {
  SUBCASE("shared edge keeps both incomparable grades") {
    const std::vector<std::array<int, 3>> tris{{0, 1, 2}, {1, 2, 3}};
    const std::vector<Bigrade> grades{{1, 1}, {2, 0}};
    const auto c = build_closure_bicomplex(tris, grades);
    const auto g = c.grades(index_of(c, {1, 2}));
    REQUIRE(g.size() == 2);
    CHECK(((g[0] == Bigrade{1, 1} && g[1] == Bigrade{2, 0}) ||
           (g[1] == Bigrade{1, 1} && g[0] == Bigrade{2, 0})));
    CHECK(validate_monotone(c).empty());
  }
  SUBCASE("single triangle propagates its grade") {
    const std::vector<std::array<int, 3>> tris{{0, 1, 2}};
    const std::vector<Bigrade> grades{{3, 7}};
    const auto c = build_closure_bicomplex(tris, grades);
    CHECK(c.size() == 7);
    for (std::size_t s = 0; s < c.size(); ++s) {
      REQUIRE(c.grades(s).size() == 1);
      CHECK(c.grades(s)[0] == Bigrade{3, 7});
    }
  }
  SUBCASE("comparable grades collapse") {
    const std::vector<std::array<int, 3>> tris{{0, 1, 2}, {1, 2, 3}};
    const std::vector<Bigrade> grades{{1, 1}, {2, 2}};
    const auto c = build_closure_bicomplex(tris, grades);
    const auto g = c.grades(index_of(c, {1, 2}));
    REQUIRE(g.size() == 1);
    CHECK(g[0] == Bigrade{1, 1});
  }
}

TEST_CASE("validate_monotone reports violations") {
  std::vector<Simplex> s{{{0}, {{3, 3}}}, {{1}, {{0, 0}}}, {{0, 1}, {{2, 2}}}};
  const BifilteredComplex c(2, s);
  const auto v = validate_monotone(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == MonotoneViolation{0, 2});
  CHECK(validate_monotone(BifilteredComplex()).empty());
}

TEST_CASE("complex construction checks") {
  CHECK_THROWS_AS(BifilteredComplex(2, {{{0, 1}, {{1, 1}}}}), InputError);        // missing faces
  CHECK_THROWS_AS(BifilteredComplex(1, {{{0}, {{0, 0}, {1, 1}}}}), InputError);    // not an antichain
  CHECK_THROWS_AS(BifilteredComplex(2, {{{1, 0}, {{0, 0}}}}), InputError);         // unsorted
  CHECK_THROWS_AS(BifilteredComplex(1, {{{0}, {}}}), InputError);                  // no grade
  CHECK_THROWS_AS(BifilteredComplex(1, {{{0}, {{0, 0}}}, {{0}, {{1, 1}}}}), InputError);
}

TEST_CASE("push_to_line entry times") {
  const BifilteredComplex one(1, {{{0}, {{3, 1}}}});
  CHECK(push_to_line(one, {0, 0}, WeightVector::unit()).times[0] == 3.0);
  CHECK(push_to_line(one, {0, 0}, {1.0, 0.5}).times[0] == 3.0);
  const BifilteredComplex two(1, {{{0}, {{3, 1}, {1, 3}}}});
  CHECK(push_to_line(two, {0, 0}, WeightVector::unit()).times[0] == 3.0);
  CHECK_THROWS_AS(push_to_line(one, {0, 0}, {2.0, 1.0}), InputError);
  CHECK_THROWS_AS(push_to_line(one, {0, 0}, {0.5, 0.5}), InputError);
}

TEST_CASE("push_to_line properties on random complexes") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 12.0);
  std::uniform_int_distribution<int> quarter(-8, 8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = oracle::random_complex(rng, 12, true);
    const Bigrade p{u(rng), u(rng)};
    const WeightVector w = trial % 2 ? WeightVector{1.0, 0.5} : WeightVector::unit();
    const auto f = push_to_line(c, p, w);
    // Translation along the diagonal by a dyadic amount shifts all times.
    const double delta = 0.25 * quarter(rng);
    const auto g = push_to_line(c, {p.x1 + delta / w.w1, p.x2 + delta / w.w2}, w);
    for (std::size_t s = 0; s < c.size(); ++s) {
      CHECK(g.times[s] == doctest::Approx(f.times[s] - delta).epsilon(1e-12));
      // Multi-critical time is the minimum over grades.
      double m = INFINITY;
      for (const Bigrade& a : c.grades(s)) m = std::min(m, line_time(a, p, w));
      CHECK(f.times[s] == m);
      for (int face : c.facets(s)) CHECK(f.times[face] <= f.times[s]);
      // Unit-weight entry by time t means some grade is below p + t.
      if (w == WeightVector::unit()) {
        const double t = f.times[s];
        CHECK(oracle::present(c, s, {p.x1 + t + 1e-9, p.x2 + t + 1e-9}));
        CHECK_FALSE(oracle::present(c, s, {p.x1 + t - 1e-9, p.x2 + t - 1e-9}));
      }
    }
  }
}

TEST_CASE("grid function and snapping") {
  GridFunction g{{0, 0.5, 2}, {0, 1}};
  CHECK(g.size() == 1.5);
  const BifilteredComplex c(1, {{{0}, {{0.3, 0.2}, {0.1, 0.9}}}});
  const auto s = snap_to_grid(c, g);
  REQUIRE(s.grades(0).size() == 1);
  CHECK(s.grades(0)[0] == Bigrade{0.5, 1});
  CHECK_THROWS_AS(snap_to_grid(BifilteredComplex(1, {{{0}, {{3, 0}}}}), g), InputError);
  CHECK_THROWS_AS((GridFunction{{0, 0}, {0, 1}}.validate()), InputError);
}

TEST_CASE("minimal elements") {
  const auto m = minimal_elements({{1, 3}, {2, 2}, {1, 3}, {2, 4}, {3, 1}});
  CHECK(m == std::vector<Bigrade>{{1, 3}, {2, 2}, {3, 1}});
}

TEST_CASE("random complexes from the fixture generator are monotone") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto c = oracle::random_complex(rng, 12, true);
    CHECK(c.size() <= 12);
    CHECK(validate_monotone(c).empty());
  }
}

}  // TEST_SUITE
