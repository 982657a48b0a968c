#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mpland/multiland.hpp"

namespace mpland {

/// Integration domain {k} x box for a landscape functional.
struct FunctionalSpec {
  int k = 1;
  Region box;
};

struct SampleStatistics {
  std::size_t n = 0;
  double mean = 0.0;
  double sample_variance = 0.0;  // divisor n - 1; 0 when n == 1
};

SampleStatistics sample_statistics(std::span<const double> values);

/// Pointwise mean; every grid must share the layout of the first.
LandscapeGrid mean_landscape(std::span<const LandscapeGrid> grids);

/// Riemann-sum L^q distance over (k, nodes) with node weight eps^2; q may be
/// +infinity for the sup norm.
double q_distance(const LandscapeGrid& a, const LandscapeGrid& b, double q);

/// Riemann sum of the k-th plane over nodes inside the box (boundary
/// included), node weight eps^2.
double functional_integral(const LandscapeGrid& grid, const FunctionalSpec& spec);

/// Upper alpha/2 critical value of the standard normal.
double normal_critical_value(double alpha);

/// Approximate (1 - alpha) interval mean +- z * S_n / sqrt(n).
std::pair<double, double> confidence_interval(std::span<const double> values, double alpha);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

/// Welch's unequal-variance two-sided t-test.
TTestResult two_sample_t(std::span<const double> a, std::span<const double> b);

/// Two-sided permutation test on |mean(a) - mean(b)| with (c + 1) / (n + 1)
/// smoothing.
double permutation_test(std::span<const double> a, std::span<const double> b, int n_perm,
                        std::uint64_t seed);

/// Flattened values in (k, x2, x1) row-major order.
std::vector<double> vectorize(const LandscapeGrid& grid);

}  // namespace mpland
