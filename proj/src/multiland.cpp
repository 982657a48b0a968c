#include "mpland/multiland.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mpland/error.hpp"
#include "mpland/landscape.hpp"
#include "mpland/persistence.hpp"
#include "parallel.hpp"

namespace mpland {

void Region::validate() const {
  for (double v : {x1_min, x1_max, x2_min, x2_max}) {
    if (!std::isfinite(v)) throw InputError("region bounds must be finite");
  }
  if (!(x1_min < x1_max) || !(x2_min < x2_max)) {
    throw InputError("degenerate region: min must be below max on both axes");
  }
}

int axis_node_count(double min, double max, double eps) {
  return static_cast<int>(std::floor((max - min) / eps + 1e-9)) + 1;
}

LandscapeGrid::LandscapeGrid(Region region, double resolution, int k_max, WeightVector weight,
                             int hom_dim)
    : region_(region), resolution_(resolution), k_max_(k_max), weight_(weight), hom_dim_(hom_dim) {
  region.validate();
  weight.validate();
  if (!(resolution > 0.0) || !std::isfinite(resolution)) throw InputError("resolution must be positive");
  if (k_max < 1) throw InputError("k_max must be >= 1");
  if (hom_dim < 0) throw InputError("homology dimension must be nonnegative");
  n1_ = axis_node_count(region.x1_min, region.x1_max, resolution);
  n2_ = axis_node_count(region.x2_min, region.x2_max, resolution);
  values_.assign(static_cast<std::size_t>(k_max) * n1_ * n2_, 0.0);
}

bool LandscapeGrid::same_layout(const LandscapeGrid& o) const {
  return region_ == o.region_ && resolution_ == o.resolution_ && k_max_ == o.k_max_ &&
         weight_ == o.weight_ && hom_dim_ == o.hom_dim_;
}

namespace {

// Grades multiplied by the weight, stored parallel to the complex's flat
// grade array.
std::vector<Bigrade> scaled_grades(const BifilteredComplex& c, const WeightVector& w) {
  std::vector<Bigrade> out;
  out.reserve(c.all_grades().size());
  for (const Bigrade& g : c.all_grades()) out.push_back({w.w1 * g.x1, w.w2 * g.x2});
  return out;
}

inline double time_at(const BifilteredComplex& c, const std::vector<Bigrade>& scaled, int s,
                      const Bigrade& node) {
  double t = INFINITY;
  for (std::size_t g = c.grade_begin(s); g < c.grade_end(s); ++g) {
    const double t1 = scaled[g].x1 - node.x1;
    const double t2 = scaled[g].x2 - node.x2;
    t = std::min(t, t1 < t2 ? t2 : t1);
  }
  return t;
}

// Evaluates k = 1..k_max at every node of one line. `nodes` are already
// multiplied by the weight. The persistence pairing is computed once at
// nodes[0]; entry times of the paired simplices are then re-evaluated at
// each node.
void evaluate_line(const BifilteredComplex& c, const std::vector<Bigrade>& scaled,
                   std::span<const Bigrade> nodes, int k_max, int hom_dim, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  if (nodes.empty() || c.of_dim(hom_dim).empty()) return;
  std::vector<double> times(c.size(), 0.0);
  const int top = std::min(hom_dim + 1, c.max_dim());
  for (int d = 0; d <= top; ++d) {
    for (int s : c.of_dim(d)) times[s] = time_at(c, scaled, s, nodes[0]);
  }
  const auto pairs = persistence_pairs(c, times, hom_dim);
  std::vector<double> tents;
  tents.reserve(pairs.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    tents.clear();
    for (const PersistencePair& p : pairs) {
      const double birth = time_at(c, scaled, p.birth, nodes[n]);
      const double death = p.death < 0 ? INFINITY : time_at(c, scaled, p.death, nodes[n]);
      const double v = std::max(0.0, std::min(0.0 - birth, death - 0.0));
      if (v > 0.0) tents.push_back(v);
    }
    top_k_descending(tents, out.subspan(n * k_max, k_max));
  }
}


}  // namespace

double eval_point(const BifilteredComplex& c, const Bigrade& x, int k, const WeightVector& weight,
                  int hom_dim) {
  if (k < 1) throw InputError("landscape depth k must be >= 1");
  const auto values = eval_points(c, std::span<const Bigrade>(&x, 1), k, weight, hom_dim);
  return values[k - 1];
}

std::vector<double> eval_points(const BifilteredComplex& c, std::span<const Bigrade> xs, int k_max,
                                const WeightVector& weight, int hom_dim) {
  weight.validate();
  if (k_max < 1) throw InputError("k_max must be >= 1");
  if (hom_dim < 0) throw InputError("homology dimension must be nonnegative");
  const auto scaled = scaled_grades(c, weight);
  std::vector<double> out(xs.size() * k_max, 0.0);
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const Bigrade node{weight.w1 * xs[n].x1, weight.w2 * xs[n].x2};
    evaluate_line(c, scaled, std::span<const Bigrade>(&node, 1), k_max, hom_dim,
                  std::span<double>(out).subspan(n * k_max, k_max));
  }
  return out;
}

LandscapeGrid compute_landscape_grid(const BifilteredComplex& c, const Region& region,
                                     double resolution, int k_max, const WeightVector& weight,
                                     int hom_dim, const GridOptions& options) {
  LandscapeGrid grid(region, resolution, k_max, weight, hom_dim);
  const int n1 = grid.n1();
  const int n2 = grid.n2();
  const auto scaled = scaled_grades(c, weight);

  // Lattice step (di, dj) between consecutive nodes on one weighted diagonal:
  // di * w1 = dj * w2. Irrational ratios leave every node on its own line.
  int di = 0, dj = 0;
  const double ratio = weight.w2 / weight.w1;
  for (int step = 1; step < n2 && di == 0; ++step) {
    const double target = ratio * step;
    const double rounded = std::round(target);
    if (rounded >= 1.0 && rounded < n1 && std::abs(target - rounded) <= 1e-12 * std::max(1.0, target)) {
      di = static_cast<int>(rounded);
      dj = step;
    }
  }

  std::vector<std::vector<std::pair<int, int>>> lines;
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      const bool is_base = di == 0 || i - di < 0 || j - dj < 0;
      if (!is_base) continue;
      std::vector<std::pair<int, int>> line;
      for (int a = i, b = j; a < n1 && b < n2; a += di, b += dj) {
        line.emplace_back(a, b);
        if (di == 0) break;
      }
      lines.push_back(std::move(line));
    }
  }

  std::vector<double> seconds(lines.size(), 0.0);
  detail::parallel_for(lines.size(), options.threads, [&](std::size_t l) {
    const auto start = std::chrono::steady_clock::now();
    const auto& line = lines[l];
    std::vector<Bigrade> nodes;
    nodes.reserve(line.size());
    for (auto [i, j] : line) nodes.push_back({weight.w1 * grid.x1(i), weight.w2 * grid.x2(j)});
    std::vector<double> out(line.size() * k_max);
    evaluate_line(c, scaled, nodes, k_max, hom_dim, out);
    // Each line owns its nodes, so the scatter is race-free.
    for (std::size_t n = 0; n < line.size(); ++n) {
      for (int k = 1; k <= k_max; ++k) grid.at(k, line[n].second, line[n].first) = out[n * k_max + k - 1];
    }
    seconds[l] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  if (options.timings) {
    options.timings->lines = lines.size();
    options.timings->nodes = static_cast<std::size_t>(n1) * n2;
    options.timings->line_seconds = std::move(seconds);
  }
  return grid;
}

BifilteredComplex rescale_bigrades(const BifilteredComplex& c, const WeightVector& weight) {
  weight.validate();
  std::vector<Simplex> out = c.simplices();
  for (Simplex& s : out) {
    for (Bigrade& g : s.grades) g = {weight.w1 * g.x1, weight.w2 * g.x2};
  }
  return BifilteredComplex(c.n_vertices(), std::move(out));
}

int recover_rank_from_landscape(const LandscapeGrid& grid, const Bigrade& a, const Bigrade& b) {
  if (!leq(a, b)) throw InputError("rank recovery requires a <= b");
  const WeightVector& w = grid.weight();
  const double h1 = w.w1 * (b.x1 - a.x1) / 2.0;
  const double h2 = w.w2 * (b.x2 - a.x2) / 2.0;
  if (std::abs(h1 - h2) > grid.resolution()) {
    throw InputError("rank recovery needs [a, b] to span a hypercube");
  }
  const double radius = std::max(h1, h2);
  const Bigrade centre{(a.x1 + b.x1) / 2.0, (a.x2 + b.x2) / 2.0};
  if (!grid.region().contains(centre)) throw InputError("hypercube centre lies outside the grid");
  const double eps = grid.resolution();
  const int i = std::clamp(static_cast<int>(std::lround((centre.x1 - grid.region().x1_min) / eps)), 0,
                           grid.n1() - 1);
  const int j = std::clamp(static_cast<int>(std::lround((centre.x2 - grid.region().x2_min) / eps)), 0,
                           grid.n2() - 1);
  int rank = 0;
  for (int k = 1; k <= grid.k_max(); ++k) {
    const double v = grid.at(k, j, i);
    if (v > 0.0 && v >= radius) rank = k;
    else break;
  }
  return rank;
}

}  // namespace mpland
