#include "mpland/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "mpland/error.hpp"
#include "mpland/random.hpp"

namespace mpland {

SampleStatistics sample_statistics(std::span<const double> values) {
  if (values.empty()) throw InputError("statistics of an empty sample");
  SampleStatistics s;
  s.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sample_variance = ss / static_cast<double>(s.n - 1);
  }
  return s;
}

LandscapeGrid mean_landscape(std::span<const LandscapeGrid> grids) {
  if (grids.empty()) throw InputError("mean of an empty grid list");
  LandscapeGrid out = grids.front();
  for (std::size_t g = 1; g < grids.size(); ++g) {
    if (!grids[g].same_layout(out)) throw InputError("grids have mismatched metadata");
  }
  if (grids.size() == 1) return out;
  // Accumulate deviations from the first grid so identical inputs reproduce
  // it exactly.
  auto base = grids.front().values();
  auto acc = out.values();
  const double n = static_cast<double>(grids.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    double dev = 0.0;
    for (std::size_t g = 1; g < grids.size(); ++g) dev += grids[g].values()[i] - base[i];
    acc[i] = base[i] + dev / n;
  }
  return out;
}

double q_distance(const LandscapeGrid& a, const LandscapeGrid& b, double q) {
  if (!a.same_layout(b)) throw InputError("grids have mismatched metadata");
  if (!(q >= 1.0)) throw InputError("q must be >= 1");
  const auto va = a.values();
  const auto vb = b.values();
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
    return m;
  }
  const double cell = a.resolution() * a.resolution();
  double sum = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) sum += std::pow(std::abs(va[i] - vb[i]), q);
  return std::pow(sum * cell, 1.0 / q);
}

double functional_integral(const LandscapeGrid& grid, const FunctionalSpec& spec) {
  if (spec.k < 1 || spec.k > grid.k_max()) throw InputError("functional depth k out of range");
  spec.box.validate();
  const Region& r = grid.region();
  if (spec.box.x1_min < r.x1_min || spec.box.x1_max > r.x1_max || spec.box.x2_min < r.x2_min ||
      spec.box.x2_max > r.x2_max) {
    throw InputError("functional box extends outside the grid region");
  }
  const double eps = grid.resolution();
  const double slack = 1e-9 * eps;
  double sum = 0.0;
  for (int j = 0; j < grid.n2(); ++j) {
    const double x2 = grid.x2(j);
    if (x2 < spec.box.x2_min - slack || x2 > spec.box.x2_max + slack) continue;
    for (int i = 0; i < grid.n1(); ++i) {
      const double x1 = grid.x1(i);
      if (x1 < spec.box.x1_min - slack || x1 > spec.box.x1_max + slack) continue;
      sum += grid.at(spec.k, j, i);
    }
  }
  return sum * eps * eps;
}

double normal_critical_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - alpha / 2.0);
}

std::pair<double, double> confidence_interval(std::span<const double> values, double alpha) {
  if (values.size() < 2) throw InputError("confidence interval needs at least two values");
  const double z = normal_critical_value(alpha);
  const SampleStatistics s = sample_statistics(values);
  const double half = z * std::sqrt(s.sample_variance / static_cast<double>(s.n));
  return {s.mean - half, s.mean + half};
}

TTestResult two_sample_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw InputError("t-test needs at least two values per group");
  const SampleStatistics sa = sample_statistics(a);
  const SampleStatistics sb = sample_statistics(b);
  const double va = sa.sample_variance / static_cast<double>(sa.n);
  const double vb = sb.sample_variance / static_cast<double>(sb.n);
  TTestResult r;
  if (va + vb == 0.0) {
    r.t = sa.mean == sb.mean ? 0.0 : std::copysign(INFINITY, sa.mean - sb.mean);
    r.df = static_cast<double>(sa.n + sb.n - 2);
    r.p_value = sa.mean == sb.mean ? 1.0 : 0.0;
    return r;
  }
  r.t = (sa.mean - sb.mean) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) /
         (va * va / static_cast<double>(sa.n - 1) + vb * vb / static_cast<double>(sb.n - 1));
  const boost::math::students_t_distribution<double> dist(r.df);
  r.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))), 0.0, 1.0);
  return r;
}

double permutation_test(std::span<const double> a, std::span<const double> b, int n_perm,
                        std::uint64_t seed) {
  if (a.empty() || b.empty()) throw InputError("permutation test needs nonempty groups");
  if (n_perm < 100) throw InputError("permutation test needs at least 100 permutations");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t na = a.size();
  auto mean_diff = [&](const std::vector<double>& v) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) (i < na ? sa : sb) += v[i];
    return std::abs(sa / static_cast<double>(na) - sb / static_cast<double>(v.size() - na));
  };
  const double observed = mean_diff(pooled);
  // Relative slack so that permutations reproducing the observed split count
  // as ties despite summation order.
  const double threshold = observed - 1e-12 * std::max(1.0, observed);
  Rng rng(seed, 0);
  int count = 0;
  for (int p = 0; p < n_perm; ++p) {
    rng.shuffle(pooled);
    if (mean_diff(pooled) >= threshold) ++count;
  }
  return (count + 1.0) / (n_perm + 1.0);
}

std::vector<double> vectorize(const LandscapeGrid& grid) {
  const auto v = grid.values();
  return {v.begin(), v.end()};
}

}  // namespace mpland
