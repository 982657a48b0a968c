#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mpland/bifiltration.hpp"
#include "mpland/datagen.hpp"
#include "mpland/error.hpp"
#include "mpland/experiments.hpp"
#include "mpland/multiland.hpp"
#include "mpland/random.hpp"

using namespace mpland;

TEST_SUITE("datagen") {

TEST_CASE("noiseless circles have the documented radii and colours") {
  for (Colouring col : {Colouring::A, Colouring::B}) {
    const auto s = gen_circles(25, col, 0.0, 11);
    REQUIRE(s.n == 50);
    REQUIRE(s.points.size() == 100);
    REQUIRE(s.vertex_values.size() == 50);
    REQUIRE(s.distances.size() == 2500);
    for (int p = 0; p < 50; ++p) {
      const double r = std::hypot(s.points[2 * p], s.points[2 * p + 1]);
      const bool small = p < 25;
      CHECK(r == doctest::Approx(small ? 1.0 : 3.0).epsilon(1e-12));
      const double expected = (small == (col == Colouring::A)) ? 1.5 : 0.5;
      CHECK(s.vertex_values[p] == expected);
    }
  }
}

TEST_CASE("circles are deterministic in the seed") {
  const auto a = gen_circles(10, Colouring::A, 0.3, 5);
  const auto b = gen_circles(10, Colouring::A, 0.3, 5);
  const auto c = gen_circles(10, Colouring::A, 0.3, 6);
  CHECK(a.points == b.points);
  CHECK(a.vertex_values == b.vertex_values);
  CHECK(a.points != c.points);
  CHECK(derive_seed(5, 0) != derive_seed(5, 1));
  CHECK(derive_seed(5, 0) == derive_seed(5, 0));
  CHECK_THROWS_AS(gen_circles(0, Colouring::A, 0.3, 5), InputError);
  CHECK_THROWS_AS(gen_circles(3, Colouring::A, -1.0, 5), InputError);
}

TEST_CASE("euclidean distances") {
  const std::vector<double> pts{0, 0, 3, 4, 0, 1};
  const auto d = euclidean_distances(pts, 2);
  CHECK(d == std::vector<double>{0, 5, 1, 5, 0, std::hypot(3.0, 3.0), 1, std::hypot(3.0, 3.0), 0});
}

TEST_CASE("disc distances") {
  const double pi = std::numbers::pi;
  for (DiscSpace sp : {DiscSpace::hyperbolic, DiscSpace::euclidean, DiscSpace::elliptic}) {
    CAPTURE(to_string(sp));
    CHECK(disc_distance(sp, 1, 0, 1, pi) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(disc_distance(sp, 0.4, 1.0, 0.4, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
    CHECK(disc_distance(sp, 0, 0, 0.7, 2.0) == doctest::Approx(0.7).epsilon(1e-12));
  }
  // Same radius 1, right angle: cosine laws of each geometry.
  CHECK(disc_distance(DiscSpace::euclidean, 1, 0, 1, pi / 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(disc_distance(DiscSpace::hyperbolic, 1, 0, 1, pi / 2) ==
        doctest::Approx(std::acosh(std::cosh(1.0) * std::cosh(1.0))));
  CHECK(disc_distance(DiscSpace::elliptic, 1, 0, 1, pi / 2) ==
        doctest::Approx(std::acos(std::cos(1.0) * std::cos(1.0))));
}

TEST_CASE("disc samples: metric axioms and curvature ordering") {
  double mean[3] = {0, 0, 0};
  const DiscSpace spaces[3] = {DiscSpace::hyperbolic, DiscSpace::euclidean, DiscSpace::elliptic};
  for (int s = 0; s < 3; ++s) {
    const auto set = gen_disc(spaces[s], 60, 17);
    REQUIRE(set.n == 60);
    const auto& d = set.distances;
    double total = 0;
    for (int i = 0; i < 60; ++i) {
      CHECK(d[i * 60 + i] == 0.0);
      for (int j = 0; j < 60; ++j) {
        CHECK(d[i * 60 + j] == d[j * 60 + i]);
        CHECK(d[i * 60 + j] <= 2.0 + 1e-12);
        total += d[i * 60 + j];
        for (int k = 0; k < 60; k += 7) CHECK(d[i * 60 + j] <= d[i * 60 + k] + d[k * 60 + j] + 1e-9);
      }
    }
    mean[s] = total / (60.0 * 59.0);
  }
  CHECK(mean[0] > mean[1]);
  CHECK(mean[1] > mean[2]);
}

TEST_CASE("knn codensity") {
  // Points 0, 1, 3 on a line.
  const std::vector<double> d{0, 1, 3, 1, 0, 2, 3, 2, 0};
  CHECK(knn_codensity(d, 3, 1) == std::vector<double>{1, 1, 2});
  CHECK(knn_codensity(d, 3, 2) == std::vector<double>{3, 2, 3});
  const std::vector<double> dup{0, 0, 0, 0};
  CHECK(knn_codensity(dup, 2, 1) == std::vector<double>{0, 0});
  CHECK_THROWS_AS(knn_codensity(d, 3, 3), InputError);
  CHECK_THROWS_AS(knn_codensity(d, 3, 0), InputError);
}

TEST_CASE("gaussian kde") {
  const std::vector<double> data{0.0};
  const auto xs = linspace(-10, 10, 4001);
  const auto f = gaussian_kde(data, 1.0, xs);
  CHECK(f[2000] == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)));
  for (int i = 0; i < 2000; ++i) CHECK(f[i] == doctest::Approx(f[4000 - i]));
  double integral = 0;
  for (int i = 0; i + 1 < 4001; ++i) integral += 0.5 * (f[i] + f[i + 1]) * (xs[i + 1] - xs[i]);
  CHECK(std::abs(integral - 1.0) < 1e-3);

  const auto tri = trimodal_fixture(7);
  const auto g = gaussian_kde(tri, 0.5, xs);
  double integral2 = 0;
  const auto wide = linspace(0, 60, 6001);
  const auto h = gaussian_kde(tri, 0.5, wide);
  for (int i = 0; i + 1 < 6001; ++i) integral2 += 0.5 * (h[i] + h[i + 1]) * (wide[i + 1] - wide[i]);
  CHECK(std::abs(integral2 - 1.0) < 1e-3);
  CHECK(g.size() == xs.size());
  CHECK_THROWS_AS(gaussian_kde(std::vector<double>{}, 1.0, xs), InputError);
  CHECK_THROWS_AS(gaussian_kde(data, 0.0, xs), InputError);
}

TEST_CASE("trimodal fixture") {
  const auto a = trimodal_fixture(7);
  CHECK(a.size() == 22);
  CHECK(a == trimodal_fixture(7));
  CHECK(a != trimodal_fixture(8));
}

TEST_CASE("kde surface on a 2 x 2 grid") {
  const std::vector<double> data{0.0}, sigmas{1.0, 2.0}, xs{-1.0, 1.0};
  const auto s = gen_kde_surface(data, sigmas, xs);
  CHECK(s.nx == 2);
  CHECK(s.nsigma == 2);
  REQUIRE(s.triangles.size() == 2);
  CHECK(s.triangles[0] == std::array<int, 3>{0, 1, 3});
  CHECK(s.triangles[1] == std::array<int, 3>{0, 2, 3});
  const auto c = s.complex();
  CHECK(c.n_vertices() == 4);
  CHECK(c.of_dim(0).size() == 4);
  CHECK(c.of_dim(1).size() == 5);
  CHECK(c.of_dim(2).size() == 2);
  // Density symmetric in x, so both triangles have the same grade.
  const double d1 = gaussian_kde(data, 1.0, std::vector<double>{1.0})[0];
  const double d2 = gaussian_kde(data, 2.0, std::vector<double>{1.0})[0];
  CHECK(s.grades[0].x1 == doctest::Approx((1.0 + 1.0 + 2.0) / 3));
  CHECK(s.grades[0].x2 == doctest::Approx(1.0 - (d1 + d1 + d2) / 3));
  CHECK(s.grades[1].x1 == doctest::Approx((1.0 + 2.0 + 2.0) / 3));
  CHECK(s.grades[1].x2 == doctest::Approx(1.0 - (d1 + d2 + d2) / 3));
  CHECK(validate_monotone(c).empty());
  CHECK_THROWS_AS(gen_kde_surface(data, std::vector<double>{2.0, 1.0}, xs), InputError);
  CHECK_THROWS_AS(gen_kde_surface(data, std::vector<double>{1.0}, xs), InputError);
}

TEST_CASE("kde surface sizes") {
  const auto s = gen_kde_surface(trimodal_fixture(1), linspace(0.5, 2, 5), linspace(10, 40, 7));
  CHECK(s.triangles.size() == 2u * 4 * 6);
  const auto c = s.complex();
  CHECK(c.of_dim(0).size() == 35u);
  // Edges: horizontal, vertical and one diagonal per cell.
  CHECK(c.of_dim(1).size() == 5u * 6 + 4u * 7 + 4u * 6);
}

TEST_CASE("circles colouring A carries a large-circle class that B lacks") {
  const Bigrade x{3.2, 1.0};
  const auto a = gen_circles(40, Colouring::A, 0.0, 3);
  const auto b = gen_circles(40, Colouring::B, 0.0, 3);
  const auto ca = build_function_rips(a.distances, a.vertex_values, INFINITY, 2);
  const auto cb = build_function_rips(b.distances, b.vertex_values, INFINITY, 2);
  CHECK(eval_point(ca, x, 1, WeightVector::unit(), 1) > 0.25);
  CHECK(eval_point(cb, x, 1, WeightVector::unit(), 1) == 0.0);
}

TEST_CASE("linspace") {
  CHECK(linspace(0, 1, 3) == std::vector<double>{0, 0.5, 1});
  const auto v = linspace(0.3, 4, 40);
  CHECK(v.front() == 0.3);
  CHECK(v.back() == 4.0);
  CHECK_THROWS_AS(linspace(0, 1, 1), InputError);
}

}  // TEST_SUITE
