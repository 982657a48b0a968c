#include "mpland/rect_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "mpland/error.hpp"

namespace mpland {

void Rect::validate() const {
  for (double v : {lower.x1, lower.x2, upper.x1, upper.x2}) {
    if (!std::isfinite(v)) throw InputError("rectangle corners must be finite");
  }
  if (!(lower.x1 < upper.x1) || !(lower.x2 < upper.x2)) {
    throw InputError("rectangle lower corner must be strictly below the upper corner");
  }
}

double rect_tent(const Rect& r, const Bigrade& x, const WeightVector& w) {
  const double x1 = w.w1 * x.x1;
  const double x2 = w.w2 * x.x2;
  const double v = std::min({x1 - w.w1 * r.lower.x1, w.w1 * r.upper.x1 - x1,
                             x2 - w.w2 * r.lower.x2, w.w2 * r.upper.x2 - x2});
  return std::max(0.0, v);
}

double rect_landscape(const RectangleBarcode& rects, int k, const Bigrade& x, const WeightVector& w) {
  if (k < 1) throw InputError("landscape depth k must be >= 1");
  if (static_cast<std::size_t>(k) > rects.size()) return 0.0;
  std::vector<double> v;
  v.reserve(rects.size());
  for (const Rect& r : rects) v.push_back(rect_tent(r, x, w));
  std::nth_element(v.begin(), v.begin() + (k - 1), v.end(), std::greater<>());
  return v[k - 1];
}

int rect_rank(const RectangleBarcode& rects, const Bigrade& a, const Bigrade& b) {
  if (!leq(a, b)) throw InputError("rect_rank requires a <= b");
  return static_cast<int>(std::count_if(rects.begin(), rects.end(), [&](const Rect& r) {
    return leq(r.lower, a) && b.x1 < r.upper.x1 && b.x2 < r.upper.x2;
  }));
}

double half_min_width(const Rect& r) {
  return std::min(r.upper.x1 - r.lower.x1, r.upper.x2 - r.lower.x2) / 2.0;
}

double rect_interleaving_distance(const Rect& a, const std::optional<Rect>& b) {
  if (!b) return half_min_width(a);
  const double corners = std::max({std::abs(a.lower.x1 - b->lower.x1), std::abs(a.lower.x2 - b->lower.x2),
                                   std::abs(a.upper.x1 - b->upper.x1), std::abs(a.upper.x2 - b->upper.x2)});
  return std::min(corners, std::max(half_min_width(a), half_min_width(*b)));
}

namespace {

double union_area(const std::optional<Rect>& a, const std::optional<Rect>& b) {
  if (!a && !b) return 0.0;
  if (!a) return b->area();
  if (!b) return a->area();
  const double w = std::min(a->upper.x1, b->upper.x1) - std::max(a->lower.x1, b->lower.x1);
  const double h = std::min(a->upper.x2, b->upper.x2) - std::max(a->lower.x2, b->lower.x2);
  const double overlap = (w > 0.0 && h > 0.0) ? w * h : 0.0;
  return a->area() + b->area() - overlap;
}

double pair_distance(const std::optional<Rect>& a, const std::optional<Rect>& b) {
  if (!a && !b) return 0.0;
  if (!a) return rect_interleaving_distance(*b, std::nullopt);
  return rect_interleaving_distance(*a, b);
}

}  // namespace

double wasserstein_pw(const RectangleBarcode& a, const RectangleBarcode& b, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw InputError("Wasserstein exponent q must be finite and >= 1");
  if (a.size() > 6 || b.size() > 6) throw InputError("wasserstein_pw supports at most 6 rectangles per barcode");
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<std::optional<Rect>> pa(n), pb(n);
  for (std::size_t i = 0; i < a.size(); ++i) pa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) pb[i] = b[i];

  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = union_area(pa[i], pb[j]) * std::pow(pair_distance(pa[i], pb[j]), q);
    }
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (n == 0) best = 0.0;
  return std::pow(best, 1.0 / q);
}

RectangleBarcode shift_rects(const RectangleBarcode& rects, const Bigrade& v) {
  RectangleBarcode out = rects;
  for (Rect& r : out) {
    r.lower = {r.lower.x1 + v.x1, r.lower.x2 + v.x2};
    r.upper = {r.upper.x1 + v.x1, r.upper.x2 + v.x2};
  }
  return out;
}

LandscapeGrid rect_landscape_grid(const RectangleBarcode& rects, const Region& region, double resolution,
                                  int k_max, const WeightVector& weight) {
  for (const Rect& r : rects) r.validate();
  LandscapeGrid grid(region, resolution, k_max, weight, 1);
  std::vector<double> tents(rects.size());
  std::vector<double> top(k_max);
  for (int j = 0; j < grid.n2(); ++j) {
    for (int i = 0; i < grid.n1(); ++i) {
      const Bigrade x = grid.node(i, j);
      for (std::size_t r = 0; r < rects.size(); ++r) tents[r] = rect_tent(rects[r], x, weight);
      std::vector<double> scratch = tents;
      std::partial_sort(scratch.begin(), scratch.begin() + std::min<std::size_t>(k_max, scratch.size()),
                        scratch.end(), std::greater<>());
      for (int k = 1; k <= k_max; ++k) {
        grid.at(k, j, i) = static_cast<std::size_t>(k) <= scratch.size() ? scratch[k - 1] : 0.0;
      }
    }
  }
  return grid;
}

BifilteredComplex rects_to_complex(const RectangleBarcode& rects) {
  std::vector<Simplex> simplices;
  const int n = static_cast<int>(rects.size());
  for (int r = 0; r < n; ++r) {
    rects[r].validate();
    for (int v = 0; v < 3; ++v) simplices.push_back({{3 * r + v}, {rects[r].lower}});
  }
  for (int r = 0; r < n; ++r) {
    const int v = 3 * r;
    for (auto e : {std::vector<int>{v, v + 1}, std::vector<int>{v, v + 2}, std::vector<int>{v + 1, v + 2}}) {
      simplices.push_back({e, {rects[r].lower}});
    }
  }
  for (int r = 0; r < n; ++r) {
    const Rect& rect = rects[r];
    const int v = 3 * r;
    simplices.push_back({{v, v + 1, v + 2},
                         {{rect.lower.x1, rect.upper.x2}, {rect.upper.x1, rect.lower.x2}}});
  }
  return BifilteredComplex(3 * n, std::move(simplices));
}

}  // namespace mpland
