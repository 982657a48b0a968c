#include "mpland/experiments.hpp"

#include <algorithm>

#include "mpland/error.hpp"
#include "mpland/random.hpp"
#include "parallel.hpp"

namespace mpland {

namespace {

// Samples run in parallel; each grid is computed single-threaded and stored in
// its own slot, so results do not depend on the thread count.
std::vector<LandscapeGrid> circle_grids(const CirclesConfig& cfg, Colouring colouring) {
  std::vector<LandscapeGrid> grids(cfg.samples);
  const std::uint64_t stream_seed = derive_seed(cfg.seed, colouring == Colouring::A ? 0 : 1);
  detail::parallel_for(grids.size(), cfg.threads, [&](std::size_t i) {
    const SampleSet s =
        gen_circles(cfg.points_per_circle, colouring, cfg.noise, derive_seed(stream_seed, i));
    const BifilteredComplex c = build_function_rips(s.distances, s.vertex_values, INFINITY, 2);
    grids[i] = compute_landscape_grid(c, cfg.region, cfg.resolution, cfg.k_max,
                                      WeightVector::unit(), 1);
  });
  return grids;
}

}  // namespace

CirclesResult run_circles(const CirclesConfig& cfg) {
  if (cfg.samples < 2) throw InputError("circles experiment needs at least two samples");
  CirclesResult r;
  r.grids_a = circle_grids(cfg, Colouring::A);
  r.grids_b = circle_grids(cfg, Colouring::B);
  for (const auto& g : r.grids_a) r.values_a.push_back(functional_integral(g, cfg.functional));
  for (const auto& g : r.grids_b) r.values_b.push_back(functional_integral(g, cfg.functional));
  r.mean_a = mean_landscape(r.grids_a);
  r.mean_b = mean_landscape(r.grids_b);
  r.ci_a = confidence_interval(r.values_a, cfg.alpha);
  r.ci_b = confidence_interval(r.values_b, cfg.alpha);
  r.ttest = two_sample_t(r.values_a, r.values_b);
  return r;
}

std::vector<double> trimodal_fixture(std::uint64_t seed) {
  Rng rng(seed, 0);
  std::vector<double> out;
  const std::array<std::pair<double, int>, 3> clusters{{{22.0, 9}, {28.0, 7}, {34.0, 6}}};
  for (auto [centre, size] : clusters) {
    for (int i = 0; i < size; ++i) out.push_back(rng.normal(centre, 1.0));
  }
  return out;
}

ModesResult run_modes(const ModesConfig& cfg) {
  ModesResult r;
  r.data = trimodal_fixture(cfg.seed);
  const auto sigmas = linspace(cfg.sigma_min, cfg.sigma_max, cfg.n_sigma);
  const auto xs = linspace(cfg.x_min, cfg.x_max, cfg.n_x);
  const KdeSurface surface = gen_kde_surface(r.data, sigmas, xs);
  GridOptions opts;
  opts.threads = cfg.threads;
  r.grid = compute_landscape_grid(surface.complex(), cfg.region, cfg.resolution, cfg.k_max,
                                  cfg.weight, 0, opts);
  for (int k = 1; k <= cfg.k_max; ++k) r.sup_norms.push_back(sup_norm(r.grid, k));
  return r;
}

CurvatureResult run_curvature(const CurvatureConfig& cfg) {
  if (cfg.samples < 1) throw InputError("curvature experiment needs at least one sample");
  CurvatureResult r;
  for (std::size_t s = 0; s < 3; ++s) {
    const DiscSpace space = CurvatureResult::spaces[s];
    const std::uint64_t stream_seed = derive_seed(cfg.seed, s);
    auto& grids = r.grids[s];
    grids.resize(cfg.samples);
    detail::parallel_for(grids.size(), cfg.threads, [&](std::size_t i) {
      const SampleSet sample = gen_disc(space, cfg.points, derive_seed(stream_seed, i));
      const auto rho = knn_codensity(sample.distances, sample.n, cfg.codensity_k);
      const BifilteredComplex c = build_function_rips(sample.distances, rho, INFINITY, 2);
      grids[i] = compute_landscape_grid(c, cfg.region, cfg.resolution, cfg.k_max,
                                        WeightVector::unit(), 1);
    });
    r.means[s] = mean_landscape(grids);
    r.sup_norms[s] = sup_norm(r.means[s], 1);
  }
  return r;
}

double sup_norm(const LandscapeGrid& grid, int k) {
  if (k < 1 || k > grid.k_max()) throw InputError("landscape depth k out of range");
  double m = 0.0;
  for (int j = 0; j < grid.n2(); ++j) {
    for (int i = 0; i < grid.n1(); ++i) m = std::max(m, grid.at(k, j, i));
  }
  return m;
}

}  // namespace mpland
