#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpland/bifiltration.hpp"

namespace mpland {

enum class SampleKind { circles, disc, kde };
enum class Colouring { A, B };
enum class DiscSpace { hyperbolic, euclidean, elliptic };

/// A generated sample. Points are row-major n x point_dim (absent for disc
/// samples); distances are always row-major n x n.
struct SampleSet {
  SampleKind kind = SampleKind::circles;
  int n = 0;
  int point_dim = 0;
  std::vector<double> points;
  std::vector<double> distances;
  std::vector<double> vertex_values;
  std::string label;
  std::uint64_t seed = 0;
};

/// Seed of the i-th member of a batch generated from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Row-major Euclidean distance matrix of n points in dimension d.
std::vector<double> euclidean_distances(std::span<const double> points, int d);

/// n points on the unit circle followed by n on the radius-3 circle. Colouring
/// A gives the large circle colour 0.5 and the small one 1.5; B swaps them.
/// With noise, N(0, sigma) is added to each radius and colour.
SampleSet gen_circles(int n_per_circle, Colouring colouring, double noise_sigma,
                      std::uint64_t seed);

/// Area-uniform sample of the radius-1 disc in the plane of curvature
/// -1, 0 or +1, with its geodesic distance matrix.
SampleSet gen_disc(DiscSpace space, int n, std::uint64_t seed);

/// Geodesic distance between polar points (r, theta) of a constant-curvature
/// plane.
double disc_distance(DiscSpace space, double r1, double theta1, double r2, double theta2);

/// Distance from each point to its k-th nearest other point.
std::vector<double> knn_codensity(std::span<const double> distances, int n, int k);

/// Gaussian kernel density estimate of `data` with bandwidth sigma at xs.
std::vector<double> gaussian_kde(std::span<const double> data, double sigma,
                                 std::span<const double> xs);

struct KdeSurface {
  int nx = 0;
  int nsigma = 0;
  std::vector<double> density;  // row-major (sigma index, x index)
  std::vector<std::array<int, 3>> triangles;
  std::vector<Bigrade> grades;  // (mean sigma, 1 - mean density)
  BifilteredComplex complex() const;
};

/// Triangulated (x, sigma) grid; vertex (i, j) = xs[i], sigmas[j] has index
/// j * nx + i, and each cell is cut along its lower-left to upper-right
/// diagonal.
KdeSurface gen_kde_surface(std::span<const double> data, std::span<const double> sigmas,
                           std::span<const double> xs);

/// Evenly spaced values lo, ..., hi (count >= 2).
std::vector<double> linspace(double lo, double hi, int count);

const char* to_string(SampleKind kind);
const char* to_string(Colouring colouring);
const char* to_string(DiscSpace space);

}  // namespace mpland
