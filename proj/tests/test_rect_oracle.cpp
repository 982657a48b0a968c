#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mpland/error.hpp"
#include "mpland/multiland.hpp"
#include "mpland/rect_oracle.hpp"
#include "oracles.hpp"

using namespace mpland;

namespace {

const RectangleBarcode M{{{0, 1}, {10, 2}}, {{4, 1}, {6, 2}}};
const RectangleBarcode N{{{0, 1}, {6, 2}}, {{4, 1}, {10, 2}}};

// An eps-interleaving of 1^I and 1^J exists iff both are 2eps-trivial (every
// internal map over a 2eps shift vanishes) or corresponding corners are
// eps-close, which is exactly when nonzero morphisms exist both ways.
bool interleaved(const Rect& I, const std::optional<Rect>& J, double eps) {
  const auto trivial = [&](const Rect& r) {
    return r.upper.x1 - r.lower.x1 <= 2 * eps || r.upper.x2 - r.lower.x2 <= 2 * eps;
  };
  if (!J) return trivial(I);
  if (trivial(I) && trivial(*J)) return true;
  const double corner = std::max({std::abs(I.lower.x1 - J->lower.x1), std::abs(I.lower.x2 - J->lower.x2),
                                  std::abs(I.upper.x1 - J->upper.x1), std::abs(I.upper.x2 - J->upper.x2)});
  return corner <= eps;
}

double bisect_interleaving(const Rect& I, const std::optional<Rect>& J) {
  double lo = 0.0, hi = 100.0;
  if (interleaved(I, J, 0.0)) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (interleaved(I, J, mid) ? hi : lo) = mid;
  }
  return hi;
}

// Exhaustive matching cost, written independently of the library.
double brute_wasserstein(RectangleBarcode a, RectangleBarcode b, double q) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<std::optional<Rect>> A(a.begin(), a.end()), B(b.begin(), b.end());
  A.resize(n);
  B.resize(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& I = A[i];
      const auto& J = B[perm[i]];
      if (!I && !J) continue;
      double eps, area;
      if (I && J) {
        eps = bisect_interleaving(*I, J);
        const double ix = std::max(0.0, std::min(I->upper.x1, J->upper.x1) - std::max(I->lower.x1, J->lower.x1));
        const double iy = std::max(0.0, std::min(I->upper.x2, J->upper.x2) - std::max(I->lower.x2, J->lower.x2));
        area = I->area() + J->area() - ix * iy;
      } else {
        const Rect& R = I ? *I : *J;
        eps = bisect_interleaving(R, std::nullopt);
        area = R.area();
      }
      s += area * std::pow(eps, q);
    }
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::pow(best, 1.0 / q);
}

}  // namespace

TEST_SUITE("rect_oracle") {

TEST_CASE("single rectangle landscape") {
  const RectangleBarcode r{{{0, 1}, {10, 2}}};
  CHECK(rect_landscape(r, 1, {5, 1.5}) == 0.5);
  CHECK(rect_landscape(r, 1, {11, 1.5}) == 0.0);
  CHECK(rect_landscape(r, 1, {5, 3}) == 0.0);
  const double h = oracle::landscape_by_bisection(
      [&](const Bigrade& a, const Bigrade& b) { return oracle::rect_rank(r, a, b); }, {5, 1.5}, 1,
      WeightVector::unit());
  CHECK(std::abs(h - 0.5) <= 1e-9);
}

TEST_CASE("M and N share landscapes but not rank invariants") {
  for (double x1 = -1; x1 <= 11; x1 += 0.173) {
    for (double x2 = 0.5; x2 <= 2.5; x2 += 0.061) {
      for (int k = 1; k <= 3; ++k) CHECK(rect_landscape(M, k, {x1, x2}) == rect_landscape(N, k, {x1, x2}));
    }
  }
  CHECK(rect_rank(M, {5, 1.2}, {5.5, 1.8}) == 2);
  CHECK(rect_rank(M, {1, 1.5}, {9, 1.5}) == 1);
  CHECK(rect_rank(N, {1, 1.5}, {9, 1.5}) == 0);
  CHECK(rect_rank({}, {0, 0}, {1, 1}) == 0);
  CHECK_THROWS_AS(rect_rank(M, {2, 2}, {1, 3}), InputError);
}

TEST_CASE("interleaving distance examples") {
  const Rect I{{0, 0}, {2, 2}}, J{{1, 1}, {3, 3}};
  CHECK(rect_interleaving_distance(I, J) == 1.0);
  CHECK(rect_interleaving_distance(I, I) == 0.0);
  CHECK(rect_interleaving_distance(I, std::nullopt) == 1.0);
  CHECK(std::abs(bisect_interleaving(I, J) - 1.0) <= 1e-9);
  CHECK(std::abs(bisect_interleaving(I, std::nullopt) - 1.0) <= 1e-9);
}

TEST_CASE("interleaving distance matches the predicate bisection") {
  std::mt19937_64 rng(81);
  for (int t = 0; t < 200; ++t) {
    const auto rs = oracle::random_rects(rng, 2, 0, 10, 2);
    CHECK(std::abs(rect_interleaving_distance(rs[0], rs[1]) - bisect_interleaving(rs[0], rs[1])) <= 1e-9);
    CHECK(std::abs(rect_interleaving_distance(rs[0], std::nullopt) - bisect_interleaving(rs[0], std::nullopt)) <= 1e-9);
  }
}

TEST_CASE("wasserstein examples") {
  std::mt19937_64 rng(83);
  const auto a = oracle::random_rects(rng, 4, 0, 10);
  CHECK(wasserstein_pw(a, a, 2.0) == 0.0);
  const RectangleBarcode one{{{0, 0}, {2, 2}}};
  for (double q : {1.0, 2.0, 3.0}) {
    CHECK(wasserstein_pw(one, {}, q) == doctest::Approx(std::pow(4.0, 1.0 / q)));
  }
  // Identity matching is worse than the swap here.
  const RectangleBarcode x{{{0, 0}, {4, 4}}, {{10, 10}, {14, 14}}};
  const RectangleBarcode y{{{10.1, 10}, {14, 14}}, {{0, 0}, {4, 4.2}}};
  CHECK(wasserstein_pw(x, y, 2.0) == doctest::Approx(brute_wasserstein(x, y, 2.0)).epsilon(1e-9));
  CHECK(wasserstein_pw(x, y, 2.0) < 1.0);
  RectangleBarcode big(7, Rect{{0, 0}, {1, 1}});
  CHECK_THROWS_AS(wasserstein_pw(big, {}, 2.0), InputError);
}

TEST_CASE("wasserstein matches exhaustive search") {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 40; ++t) {
    const auto a = oracle::random_rects(rng, 3, 0, 10, 0);
    const auto b = oracle::random_rects(rng, 3, 0, 10, 0);
    if (a.empty() && b.empty()) continue;
    for (double q : {1.0, 2.0}) {
      CHECK(wasserstein_pw(a, b, q) == doctest::Approx(brute_wasserstein(a, b, q)).epsilon(1e-9));
    }
  }
}

TEST_CASE("shift_rects") {
  const RectangleBarcode r{{{0, 0}, {2, 2}}};
  CHECK(shift_rects(r, {0, 0}) == r);
  CHECK(shift_rects(r, {1, 0}) == RectangleBarcode{{{1, 0}, {3, 2}}});
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    const auto rs = oracle::random_rects(rng, 1, 0, 10);
    const Bigrade v{u(rng), u(rng)};
    CHECK(rect_interleaving_distance(rs[0], shift_rects(rs, v)[0]) <=
          std::max(std::abs(v.x1), std::abs(v.x2)) + 1e-12);
  }
}

TEST_CASE("landscape agrees with rank bisection and is monotone in k") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1, 11);
  for (int t = 0; t < 30; ++t) {
    const auto rs = oracle::random_rects(rng, 4, 0, 10);
    const WeightVector w = t % 2 ? WeightVector{0.3, 1.0} : WeightVector::unit();
    for (int q = 0; q < 30; ++q) {
      const Bigrade x{u(rng), u(rng)};
      for (int k = 1; k <= 4; ++k) {
        const double v = rect_landscape(rs, k, x, w);
        const double h = oracle::landscape_by_bisection(
            [&](const Bigrade& a, const Bigrade& b) { return oracle::rect_rank(rs, a, b); }, x, k, w);
        CHECK(std::abs(v - h) <= 1e-9);
        CHECK(rect_landscape(rs, k + 1, x, w) <= v);
      }
    }
  }
}

TEST_CASE("rects_to_complex realizes the rectangle module") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(-1, 11);
  for (int t = 0; t < 20; ++t) {
    const auto rs = oracle::random_rects(rng, 3, 0, 10);
    const auto c = rects_to_complex(rs);
    for (int q = 0; q < 20; ++q) {
      Bigrade a{u(rng), u(rng)}, b{u(rng), u(rng)};
      b = {std::max(a.x1, b.x1), std::max(a.x2, b.x2)};
      CHECK(oracle::rank_invariant(c, a, b, 1) == oracle::rect_rank(rs, a, b));
    }
    const auto g1 = rect_landscape_grid(rs, {0, 10, 0, 10}, 0.5, 3);
    const auto g2 = compute_landscape_grid(c, {0, 10, 0, 10}, 0.5, 3, WeightVector::unit(), 1);
    CHECK(std::equal(g1.values().begin(), g1.values().end(), g2.values().begin(), g2.values().end()));
  }
}

}  // TEST_SUITE
