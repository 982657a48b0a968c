#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mpland/bifiltration.hpp"

namespace mpland {

struct Region {
  double x1_min = 0.0;
  double x1_max = 1.0;
  double x2_min = 0.0;
  double x2_max = 1.0;

  void validate() const;
  bool contains(const Bigrade& x) const {
    return x.x1 >= x1_min && x.x1 <= x1_max && x.x2 >= x2_min && x.x2 <= x2_max;
  }
  friend bool operator==(const Region&, const Region&) = default;
};

/// Number of nodes min, min + eps, ... that do not exceed max.
int axis_node_count(double min, double max, double eps);

/// Landscape values lambda(k, x) on the nodes x = (x1_min + i eps,
/// x2_min + j eps) of a rectangular region, for k = 1..k_max.
///
/// Storage is row-major over (k, j, i): x1 varies fastest, x2 ascends with j.
class LandscapeGrid {
 public:
  LandscapeGrid() = default;
  LandscapeGrid(Region region, double resolution, int k_max, WeightVector weight, int hom_dim);

  const Region& region() const { return region_; }
  double resolution() const { return resolution_; }
  int k_max() const { return k_max_; }
  const WeightVector& weight() const { return weight_; }
  int hom_dim() const { return hom_dim_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }

  double x1(int i) const { return region_.x1_min + i * resolution_; }
  double x2(int j) const { return region_.x2_min + j * resolution_; }
  Bigrade node(int i, int j) const { return {x1(i), x2(j)}; }

  // k is 1-based.
  double at(int k, int j, int i) const { return values_[index(k, j, i)]; }
  double& at(int k, int j, int i) { return values_[index(k, j, i)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  // Region, resolution, k_max, weight and homology dimension all equal.
  bool same_layout(const LandscapeGrid& other) const;

 private:
  std::size_t index(int k, int j, int i) const {
    return (static_cast<std::size_t>(k - 1) * n2_ + j) * n1_ + i;
  }

  Region region_;
  double resolution_ = 1.0;
  int k_max_ = 1;
  WeightVector weight_;
  int hom_dim_ = 0;
  int n1_ = 0;
  int n2_ = 0;
  std::vector<double> values_;
};

/// Optional instrumentation for grid computations.
struct GridTimings {
  std::size_t lines = 0;
  std::size_t nodes = 0;
  std::vector<double> line_seconds;  // reduction + evaluation per line
};

struct GridOptions {
  unsigned threads = 1;
  GridTimings* timings = nullptr;
};

/// Weighted landscape value at a single point: pushes the complex to the
/// weighted diagonal through x and evaluates the k-th landscape at time 0.
double eval_point(const BifilteredComplex& c, const Bigrade& x, int k,
                  const WeightVector& weight, int hom_dim);

/// Values for k = 1..k_max at each point, each point evaluated on its own
/// line. Result is row-major (point, k).
std::vector<double> eval_points(const BifilteredComplex& c, std::span<const Bigrade> xs,
                                int k_max, const WeightVector& weight, int hom_dim);

/// Landscape grid over `region`. Nodes sharing a weighted diagonal share one
/// persistence computation; every node value is then evaluated from that
/// pairing with entry times taken at the node itself, so node values match
/// eval_point.
LandscapeGrid compute_landscape_grid(const BifilteredComplex& c, const Region& region,
                                     double resolution, int k_max, const WeightVector& weight,
                                     int hom_dim, const GridOptions& options = {});

/// Multiplies every grade coordinate by the matching weight entry.
BifilteredComplex rescale_bigrades(const BifilteredComplex& c, const WeightVector& weight);

/// Rank invariant at (a, b) read off the landscape when [a, b] is a (weighted)
/// hypercube: the largest k whose value at the nearest node to the centre
/// reaches the weighted half side length (and is positive).
int recover_rank_from_landscape(const LandscapeGrid& grid, const Bigrade& a, const Bigrade& b);

}  // namespace mpland
