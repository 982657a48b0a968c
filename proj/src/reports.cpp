#include "mpland/reports.hpp"

#include <json.hpp>

#include "mpland/io.hpp"

namespace mpland::io {

namespace {

using json = nlohmann::ordered_json;

json region_json(const Region& r) {
  return {{"x1_min", r.x1_min}, {"x1_max", r.x1_max}, {"x2_min", r.x2_min}, {"x2_max", r.x2_max}};
}

json summary_json(const std::vector<double>& values) {
  const SampleStatistics s = sample_statistics(values);
  return {{"n", s.n}, {"mean", s.mean}, {"sample_variance", s.sample_variance}};
}

void append(std::vector<fs::path>& to, const std::vector<fs::path>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

fs::path write_json(const fs::path& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
  return path;
}

}  // namespace

std::vector<fs::path> write_circles_report(const CirclesConfig& cfg, const CirclesResult& r,
                                           const fs::path& dir) {
  std::vector<fs::path> out;
  write_file(dir / "values_A.txt", format_values(r.values_a));
  write_file(dir / "values_B.txt", format_values(r.values_b));
  out.push_back(dir / "values_A.txt");
  out.push_back(dir / "values_B.txt");
  append(out, write_grid(r.mean_a, dir / "mean_A", true));
  append(out, write_grid(r.mean_b, dir / "mean_B", true));

  std::vector<LandscapeGrid> grids = r.grids_a;
  grids.insert(grids.end(), r.grids_b.begin(), r.grids_b.end());
  std::vector<std::string> labels(r.grids_a.size(), "A");
  labels.resize(grids.size(), "B");
  write_file(dir / "features.csv", format_features(grids, labels));
  out.push_back(dir / "features.csv");

  json j;
  j["experiment"] = "circles";
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["points_per_circle"] = cfg.points_per_circle;
  j["noise"] = cfg.noise;
  j["region"] = region_json(cfg.region);
  j["resolution"] = cfg.resolution;
  j["k_max"] = cfg.k_max;
  j["functional"] = {{"k", cfg.functional.k}, {"box", region_json(cfg.functional.box)}};
  j["alpha"] = cfg.alpha;
  j["A"] = summary_json(r.values_a);
  j["A"]["ci"] = {r.ci_a.first, r.ci_a.second};
  j["B"] = summary_json(r.values_b);
  j["B"]["ci"] = {r.ci_b.first, r.ci_b.second};
  j["welch"] = {{"t", r.ttest.t}, {"df", r.ttest.df}, {"p_value", r.ttest.p_value}};
  out.push_back(write_json(dir / "stats.json", j));
  return out;
}

std::vector<fs::path> write_modes_report(const ModesConfig& cfg, const ModesResult& r,
                                         const fs::path& dir) {
  std::vector<fs::path> out;
  write_file(dir / "data.txt", format_values(r.data));
  out.push_back(dir / "data.txt");
  append(out, write_grid(r.grid, dir / "grid", true));
  json j;
  j["experiment"] = "modes";
  j["seed"] = cfg.seed;
  j["sigma_range"] = {cfg.sigma_min, cfg.sigma_max};
  j["n_sigma"] = cfg.n_sigma;
  j["x_range"] = {cfg.x_min, cfg.x_max};
  j["n_x"] = cfg.n_x;
  j["region"] = region_json(cfg.region);
  j["resolution"] = cfg.resolution;
  j["k_max"] = cfg.k_max;
  j["weight"] = {cfg.weight.w1, cfg.weight.w2};
  j["sup_norms"] = r.sup_norms;
  out.push_back(write_json(dir / "stats.json", j));
  return out;
}

std::vector<fs::path> write_curvature_report(const CurvatureConfig& cfg, const CurvatureResult& r,
                                             const fs::path& dir) {
  std::vector<fs::path> out;
  std::vector<LandscapeGrid> grids;
  std::vector<std::string> labels;
  json norms;
  for (std::size_t s = 0; s < 3; ++s) {
    const std::string name = to_string(CurvatureResult::spaces[s]);
    append(out, write_grid(r.means[s], dir / ("mean_" + name), true));
    grids.insert(grids.end(), r.grids[s].begin(), r.grids[s].end());
    labels.resize(grids.size(), name);
    norms[name] = r.sup_norms[s];
  }
  write_file(dir / "features.csv", format_features(grids, labels));
  out.push_back(dir / "features.csv");
  json j;
  j["experiment"] = "curvature";
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["points"] = cfg.points;
  j["codensity_k"] = cfg.codensity_k;
  j["region"] = region_json(cfg.region);
  j["resolution"] = cfg.resolution;
  j["k_max"] = cfg.k_max;
  j["sup_norm_mean_first_landscape"] = norms;
  out.push_back(write_json(dir / "stats.json", j));
  return out;
}

}  // namespace mpland::io
