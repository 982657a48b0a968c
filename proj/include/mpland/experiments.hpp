#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "mpland/datagen.hpp"
#include "mpland/multiland.hpp"
#include "mpland/stats.hpp"

namespace mpland {

/// Noisy two-colouring concentric circles study on the H1 function-Rips
/// landscape.
struct CirclesConfig {
  int samples = 30;
  int points_per_circle = 50;
  double noise = 0.3;
  std::uint64_t seed = 7;
  Region region{0.0, 6.0, 0.0, 2.0};
  double resolution = 0.1;
  int k_max = 2;
  FunctionalSpec functional{1, {2.0, 6.0, 0.0, 1.5}};
  double alpha = 0.01;
  unsigned threads = 1;
};

struct CirclesResult {
  std::vector<LandscapeGrid> grids_a;
  std::vector<LandscapeGrid> grids_b;
  std::vector<double> values_a;
  std::vector<double> values_b;
  LandscapeGrid mean_a;
  LandscapeGrid mean_b;
  std::pair<double, double> ci_a;
  std::pair<double, double> ci_b;
  TTestResult ttest;
};

CirclesResult run_circles(const CirclesConfig& config);

/// Three-cluster 1-D data: normal clusters at 22, 28 and 34 (sd 1) of sizes
/// 9, 7 and 6.
std::vector<double> trimodal_fixture(std::uint64_t seed);

/// H0 landscape of the KDE bandwidth surface.
struct ModesConfig {
  std::uint64_t seed = 7;
  double sigma_min = 0.3;
  double sigma_max = 4.0;
  int n_sigma = 40;
  double x_min = 16.0;
  double x_max = 40.0;
  int n_x = 80;
  Region region{0.3, 4.0, 0.7, 1.0};
  double resolution = 0.005;
  int k_max = 5;
  WeightVector weight;
  unsigned threads = 1;
};

struct ModesResult {
  std::vector<double> data;
  LandscapeGrid grid;
  std::vector<double> sup_norms;  // per k
};

ModesResult run_modes(const ModesConfig& config);

/// Constant-curvature discs filtered by Rips distance and k-NN codensity.
struct CurvatureConfig {
  int samples = 30;
  int points = 100;
  int codensity_k = 3;
  std::uint64_t seed = 7;
  Region region{0.0, 1.0, 0.0, 0.5};
  double resolution = 0.02;
  int k_max = 3;
  unsigned threads = 1;
};

struct CurvatureResult {
  static constexpr std::array<DiscSpace, 3> spaces{DiscSpace::hyperbolic, DiscSpace::euclidean,
                                                   DiscSpace::elliptic};
  std::array<std::vector<LandscapeGrid>, 3> grids;
  std::array<LandscapeGrid, 3> means;
  std::array<double, 3> sup_norms{};  // first landscape of each mean
};

CurvatureResult run_curvature(const CurvatureConfig& config);

/// Largest value of the k-th plane.
double sup_norm(const LandscapeGrid& grid, int k);

}  // namespace mpland
