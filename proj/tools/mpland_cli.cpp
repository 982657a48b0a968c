// Command-line front end. Everything goes through the C API in mpland.h.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpland/mpland.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr std::uint64_t kDefaultSeed = 7;

struct Failure {
  int code;
  std::string message;
};

void check(mpl_status s) {
  if (s != MPL_OK) throw Failure{static_cast<int>(s), mpl_last_error()};
}

[[noreturn]] void input_error(const std::string& msg) { throw Failure{kExitInput, msg}; }
[[noreturn]] void usage_error(const std::string& msg) { throw Failure{kExitUsage, msg}; }

struct ArrayDeleter {
  void operator()(double* p) const { mpl_array_free(p); }
};
using Array = std::unique_ptr<double[], ArrayDeleter>;

struct ComplexDeleter {
  void operator()(mpl_complex* p) const { mpl_complex_free(p); }
};
struct GridDeleter {
  void operator()(mpl_grid* p) const { mpl_grid_free(p); }
};
struct RectsDeleter {
  void operator()(mpl_rects* p) const { mpl_rects_free(p); }
};
using Complex = std::unique_ptr<mpl_complex, ComplexDeleter>;
using Grid = std::unique_ptr<mpl_grid, GridDeleter>;
using Rects = std::unique_ptr<mpl_rects, RectsDeleter>;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(item == "inf" ? INFINITY : std::stod(item, &used));
      if (item != "inf" && used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      usage_error(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (out.size() != expected) {
    usage_error(std::string(flag) + " expects " + std::to_string(expected) +
                " comma-separated numbers");
  }
  return out;
}

mpl_region parse_region(const std::string& text, const char* flag) {
  const auto v = parse_list(text, 4, flag);
  return {v[0], v[1], v[2], v[3]};
}

json region_json(const mpl_region& r) { return {r.x1_min, r.x1_max, r.x2_min, r.x2_max}; }

std::vector<double> read_values(const std::string& path) {
  double* data = nullptr;
  std::size_t n = 0;
  check(mpl_read_values(path.c_str(), &data, &n));
  Array guard(data);
  return {data, data + n};
}

Grid read_grid(const std::string& path) {
  mpl_grid* g = nullptr;
  check(mpl_grid_read(path.c_str(), &g));
  return Grid(g);
}

Rects read_rects(const std::string& path) {
  mpl_rects* r = nullptr;
  check(mpl_rects_read(path.c_str(), &r));
  return Rects(r);
}

// Shared state of one invocation: output directory, manifest contents and
// whatever the command reports on stdout.
struct Run {
  std::string command;
  std::string out_dir = "mpland_out";
  unsigned threads = 1;
  json parameters = json::object();
  json inputs = json::object();
  json result;
  bool has_seed = false;
  std::uint64_t seed = kDefaultSeed;

  void input(const std::string& path) {
    char* h = nullptr;
    check(mpl_file_hash(path.c_str(), &h));
    inputs[path] = h;
    mpl_string_free(h);
  }

  std::string out(const std::string& name) const { return (fs::path(out_dir) / name).string(); }

  void finish() {
    fs::create_directories(out_dir);
    if (!result.is_null()) {
      std::ofstream(out("result.json"), std::ios::binary) << result.dump(2) << "\n";
    }
    std::vector<std::string> outputs;
    for (const auto& e : fs::recursive_directory_iterator(out_dir)) {
      if (!e.is_regular_file()) continue;
      const std::string rel = fs::relative(e.path(), out_dir).generic_string();
      if (rel != "manifest.json") outputs.push_back(rel);
    }
    std::sort(outputs.begin(), outputs.end());
    json m;
    m["tool"] = "mpland";
    m["version"] = mpl_version();
    m["command"] = command;
    m["parameters"] = parameters;
    m["seed"] = has_seed ? json(seed) : json(nullptr);
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    std::ofstream(out("manifest.json"), std::ios::binary) << m.dump(2) << "\n";
  }
};

void add_common(CLI::App* sub, Run& run) {
  sub->add_option("--out", run.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--threads", run.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
}

void add_seed(CLI::App* sub, Run& run) {
  sub->add_option("--seed", run.seed, "Random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiparameter persistence landscapes"};
  app.set_version_flag("--version", std::string(mpl_version()));
  app.require_subcommand(1);
  Run run;
  std::function<void()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate circles, disc or kde data");
  gen->require_subcommand(1);
  {
    static int n = 50;
    static std::string colouring = "A";
    static double noise = 0.0;
    auto* c = gen->add_subcommand("circles", "Concentric circles point cloud");
    c->add_option("--n", n, "Points per circle")->capture_default_str();
    c->add_option("--colouring", colouring, "A or B")->check(CLI::IsMember({"A", "B"}));
    c->add_option("--noise", noise, "Normal noise on radius and colour")->capture_default_str();
    add_common(c, run);
    add_seed(c, run);
    c->callback([&] {
      run.command = "gen circles";
      run.has_seed = true;
      action = [&] {
        run.parameters = {{"n", n}, {"colouring", colouring}, {"noise", noise}};
        double* pts = nullptr;
        double* vals = nullptr;
        std::size_t np = 0;
        check(mpl_gen_circles(n, colouring[0], noise, run.seed, &pts, &vals, &np));
        Array gp(pts), gv(vals);
        check(mpl_write_point_cloud(run.out("points.csv").c_str(), pts, np, 2, vals));
      };
    });

    static std::string space = "euclidean";
    static int disc_n = 100;
    static int codensity_k = 3;
    auto* d = gen->add_subcommand("disc", "Constant-curvature disc distances");
    d->add_option("--space", space)->check(CLI::IsMember({"hyperbolic", "euclidean", "elliptic"}));
    d->add_option("--n", disc_n, "Number of points")->capture_default_str();
    d->add_option("--codensity-k", codensity_k, "Neighbour rank for codensity values")
        ->capture_default_str();
    add_common(d, run);
    add_seed(d, run);
    d->callback([&] {
      run.command = "gen disc";
      run.has_seed = true;
      action = [&] {
        run.parameters = {{"space", space}, {"n", disc_n}, {"codensity_k", codensity_k}};
        double* dist = nullptr;
        check(mpl_gen_disc(space.c_str(), disc_n, run.seed, &dist));
        Array gd(dist);
        check(mpl_write_distance_matrix(run.out("distances.txt").c_str(), dist, disc_n));
        double* rho = nullptr;
        check(mpl_knn_codensity(dist, disc_n, codensity_k, &rho));
        Array gr(rho);
        check(mpl_write_values(run.out("codensity.txt").c_str(), rho, disc_n));
      };
    });

    static std::string data_path;
    static std::string sigma_range = "0.3,4";
    static int n_sigma = 40;
    static std::string x_range;
    static int n_x = 80;
    auto* k = gen->add_subcommand("kde", "Triangulated KDE bandwidth surface complex");
    k->add_option("--data", data_path, "1-D data file (default: trimodal fixture)");
    k->add_option("--sigmas", sigma_range, "sigma_min,sigma_max")->capture_default_str();
    k->add_option("--n-sigma", n_sigma)->capture_default_str();
    k->add_option("--xs", x_range, "x_min,x_max (default: data range padded by 6)");
    k->add_option("--n-x", n_x)->capture_default_str();
    add_common(k, run);
    add_seed(k, run);
    k->callback([&] {
      run.command = "gen kde";
      run.has_seed = true;
      action = [&] {
        std::vector<double> data;
        if (data_path.empty()) {
          double* p = nullptr;
          std::size_t n = 0;
          check(mpl_trimodal_fixture(run.seed, &p, &n));
          Array g(p);
          data.assign(p, p + n);
        } else {
          run.input(data_path);
          run.has_seed = false;
          data = read_values(data_path);
        }
        if (data.empty()) input_error("no data values");
        const auto sr = parse_list(sigma_range, 2, "--sigmas");
        std::vector<double> xr;
        if (x_range.empty()) {
          const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
          xr = {*lo - 6.0, *hi + 6.0};
        } else {
          xr = parse_list(x_range, 2, "--xs");
        }
        if (n_sigma < 2 || n_x < 2) usage_error("grid sizes must be at least 2");
        auto lin = [](double a, double b, int m) {
          std::vector<double> v(m);
          for (int i = 0; i < m; ++i) v[i] = a + (b - a) * i / (m - 1);
          v.back() = b;
          return v;
        };
        const auto sigmas = lin(sr[0], sr[1], n_sigma);
        const auto xs = lin(xr[0], xr[1], n_x);
        run.parameters = {{"data", data_path.empty() ? json("trimodal-fixture") : json(data_path)},
                          {"sigmas", sr},
                          {"n_sigma", n_sigma},
                          {"xs", xr},
                          {"n_x", n_x}};
        mpl_complex* c = nullptr;
        check(mpl_complex_kde_surface(data.data(), data.size(), sigmas.data(), sigmas.size(),
                                      xs.data(), xs.size(), &c));
        Complex guard(c);
        check(mpl_write_values(run.out("data.txt").c_str(), data.data(), data.size()));
        check(mpl_complex_write(c, run.out("complex.txt").c_str()));
      };
    });
  }

  // rips
  {
    static std::string points, distances, values;
    static double max_scale = INFINITY;
    static int max_dim = 2;
    auto* r = app.add_subcommand("rips", "Function-Rips bifiltered complex");
    r->add_option("--points", points, "Point CSV (values from its f column or --values)");
    r->add_option("--distances", distances, "Lower-triangular distance file");
    r->add_option("--values", values, "Vertex values file");
    r->add_option("--max-scale", max_scale, "Largest simplex diameter");
    r->add_option("--max-dim", max_dim, "Largest simplex dimension")->capture_default_str();
    add_common(r, run);
    r->callback([&] {
      run.command = "rips";
      action = [&] {
        if (points.empty() == distances.empty()) usage_error("give exactly one of --points, --distances");
        std::vector<double> dist, vals;
        std::size_t n = 0;
        if (!points.empty()) {
          run.input(points);
          double *coords = nullptr, *f = nullptr;
          int dim = 0;
          check(mpl_read_point_cloud(points.c_str(), &coords, &n, &dim, &f));
          Array gc(coords), gf(f);
          double* d = nullptr;
          check(mpl_euclidean_distances(coords, n, dim, &d));
          Array gd(d);
          dist.assign(d, d + n * n);
          if (f) vals.assign(f, f + n);
        } else {
          run.input(distances);
          double* d = nullptr;
          check(mpl_read_distance_matrix(distances.c_str(), &d, &n));
          Array gd(d);
          dist.assign(d, d + n * n);
        }
        if (!values.empty()) {
          run.input(values);
          vals = read_values(values);
        }
        if (vals.size() != n) input_error("need one vertex value per point (f column or --values)");
        run.parameters = {{"points", points}, {"distances", distances}, {"values", values},
                          {"max_scale", fmt(max_scale)}, {"max_dim", max_dim}};
        mpl_complex* c = nullptr;
        check(mpl_complex_function_rips(dist.data(), n, vals.data(), max_scale, max_dim, &c));
        Complex guard(c);
        check(mpl_complex_write(c, run.out("complex.txt").c_str()));
        run.result = {{"simplices", mpl_complex_size(c)}};
      };
    });
  }

  // landscape
  {
    static std::string complex_path, region = "0,1,0,1", weight = "1,1", barcode_at;
    static double resolution = 0.1;
    static int k_max = 1, dim = 0;
    static bool pgm = false;
    auto* l = app.add_subcommand("landscape", "Landscape grid of a bifiltered complex");
    l->add_option("complex", complex_path, "Complex file")->required();
    l->add_option("--region", region, "x1_min,x1_max,x2_min,x2_max")->capture_default_str();
    l->add_option("--resolution", resolution)->capture_default_str();
    l->add_option("--kmax", k_max)->capture_default_str();
    l->add_option("--weight", weight, "w1,w2 with max 1")->capture_default_str();
    l->add_option("--dim", dim, "Homology dimension")->capture_default_str();
    l->add_option("--barcode-at", barcode_at, "Also export the barcode on the line through x1,x2");
    l->add_flag("--pgm", pgm, "Write PGM heatmaps");
    add_common(l, run);
    l->callback([&] {
      run.command = "landscape";
      action = [&] {
        run.input(complex_path);
        const mpl_region reg = parse_region(region, "--region");
        const auto w = parse_list(weight, 2, "--weight");
        run.parameters = {{"complex", complex_path}, {"region", region_json(reg)},
                          {"resolution", resolution}, {"kmax", k_max}, {"weight", w},
                          {"dim", dim}, {"pgm", pgm}, {"barcode_at", barcode_at}};
        mpl_complex* c = nullptr;
        check(mpl_complex_read(complex_path.c_str(), &c));
        Complex cg(c);
        mpl_grid* g = nullptr;
        check(mpl_landscape_grid(c, &reg, resolution, k_max, w[0], w[1], dim, run.threads, &g));
        Grid gg(g);
        check(mpl_grid_write(g, run.out_dir.c_str(), pgm));
        if (!barcode_at.empty()) {
          const auto x = parse_list(barcode_at, 2, "--barcode-at");
          char* csv = nullptr;
          check(mpl_barcode_csv(c, x[0], x[1], w[0], w[1], dim, &csv));
          std::ofstream(run.out("barcode.csv"), std::ios::binary) << csv;
          mpl_string_free(csv);
        }
      };
    });
  }

  // distance
  {
    static std::string a, b, q = "2";
    auto* d = app.add_subcommand("distance", "q-landscape distance of two grids");
    d->add_option("grid_a", a)->required();
    d->add_option("grid_b", b)->required();
    d->add_option("--q", q, "Exponent >= 1 or inf")->capture_default_str();
    add_common(d, run);
    d->callback([&] {
      run.command = "distance";
      action = [&] {
        run.input(fs::is_directory(a) ? (fs::path(a) / "grid.json").string() : a);
        run.input(fs::is_directory(b) ? (fs::path(b) / "grid.json").string() : b);
        const double qv = parse_list(q, 1, "--q")[0];
        run.parameters = {{"grid_a", a}, {"grid_b", b}, {"q", q}};
        auto ga = read_grid(a);
        auto gb = read_grid(b);
        double v = 0.0;
        check(mpl_q_distance(ga.get(), gb.get(), qv, &v));
        std::cout << fmt(v) << "\n";
        run.result = {{"distance", v}};
      };
    });
  }

  // mean
  {
    static std::vector<std::string> grids;
    auto* m = app.add_subcommand("mean", "Pointwise mean of grids");
    m->add_option("grids", grids)->required();
    add_common(m, run);
    m->callback([&] {
      run.command = "mean";
      action = [&] {
        std::vector<Grid> owned;
        std::vector<const mpl_grid*> ptrs;
        for (const auto& p : grids) {
          run.input(fs::is_directory(p) ? (fs::path(p) / "grid.json").string() : p);
          owned.push_back(read_grid(p));
          ptrs.push_back(owned.back().get());
        }
        run.parameters = {{"grids", grids}};
        mpl_grid* g = nullptr;
        check(mpl_grid_mean(ptrs.data(), ptrs.size(), &g));
        Grid gg(g);
        check(mpl_grid_write(g, run.out_dir.c_str(), 0));
      };
    });
  }

  // functional
  {
    static std::string grid, box;
    static int k = 1;
    auto* f = app.add_subcommand("functional", "Integral of one landscape over a box");
    f->add_option("grid", grid)->required();
    f->add_option("--k", k)->capture_default_str();
    f->add_option("--box", box, "x1_min,x1_max,x2_min,x2_max")->required();
    add_common(f, run);
    f->callback([&] {
      run.command = "functional";
      action = [&] {
        run.input(fs::is_directory(grid) ? (fs::path(grid) / "grid.json").string() : grid);
        const mpl_region bx = parse_region(box, "--box");
        run.parameters = {{"grid", grid}, {"k", k}, {"box", region_json(bx)}};
        auto g = read_grid(grid);
        double v = 0.0;
        check(mpl_functional(g.get(), k, &bx, &v));
        std::cout << fmt(v) << "\n";
        run.result = {{"functional", v}};
      };
    });
  }

  // ci
  {
    static std::string values;
    static double alpha = 0.05;
    auto* c = app.add_subcommand("ci", "Approximate confidence interval of a mean");
    c->add_option("values", values)->required();
    c->add_option("--alpha", alpha)->capture_default_str();
    add_common(c, run);
    c->callback([&] {
      run.command = "ci";
      action = [&] {
        run.input(values);
        run.parameters = {{"values", values}, {"alpha", alpha}};
        const auto v = read_values(values);
        double lo = 0.0, hi = 0.0;
        check(mpl_confidence_interval(v.data(), v.size(), alpha, &lo, &hi));
        std::cout << fmt(lo) << " " << fmt(hi) << "\n";
        run.result = {{"lo", lo}, {"hi", hi}};
      };
    });
  }

  // ttest / permtest
  {
    static std::string a, b;
    static int perms = 10000;
    auto* t = app.add_subcommand("ttest", "Welch two-sample t-test");
    t->add_option("values_a", a)->required();
    t->add_option("values_b", b)->required();
    add_common(t, run);
    t->callback([&] {
      run.command = "ttest";
      action = [&] {
        run.input(a);
        run.input(b);
        run.parameters = {{"values_a", a}, {"values_b", b}};
        const auto va = read_values(a), vb = read_values(b);
        double tv = 0.0, df = 0.0, p = 0.0;
        check(mpl_ttest(va.data(), va.size(), vb.data(), vb.size(), &tv, &df, &p));
        std::cout << fmt(p) << "\n";
        run.result = {{"t", tv}, {"df", df}, {"p_value", p}};
      };
    });
    auto* p = app.add_subcommand("permtest", "Two-sample permutation test on means");
    p->add_option("values_a", a)->required();
    p->add_option("values_b", b)->required();
    p->add_option("--perms", perms)->capture_default_str();
    add_common(p, run);
    add_seed(p, run);
    p->callback([&] {
      run.command = "permtest";
      run.has_seed = true;
      action = [&] {
        run.input(a);
        run.input(b);
        run.parameters = {{"values_a", a}, {"values_b", b}, {"perms", perms}};
        const auto va = read_values(a), vb = read_values(b);
        double pv = 0.0;
        check(mpl_permutation_test(va.data(), va.size(), vb.data(), vb.size(), perms, run.seed,
                                   &pv));
        std::cout << fmt(pv) << "\n";
        run.result = {{"p_value", pv}};
      };
    });
  }

  // vectorize
  {
    static std::vector<std::string> grids;
    static std::string labels;
    auto* v = app.add_subcommand("vectorize", "Feature matrix CSV from grids");
    v->add_option("grids", grids)->required();
    v->add_option("--labels", labels, "Comma-separated labels (default: grid paths)");
    add_common(v, run);
    v->callback([&] {
      run.command = "vectorize";
      action = [&] {
        std::vector<std::string> names;
        if (labels.empty()) {
          names = grids;
        } else {
          std::stringstream ss(labels);
          std::string item;
          while (std::getline(ss, item, ',')) names.push_back(item);
        }
        if (names.size() != grids.size()) usage_error("--labels needs one label per grid");
        std::vector<Grid> owned;
        std::vector<const mpl_grid*> ptrs;
        std::vector<const char*> cl;
        for (std::size_t i = 0; i < grids.size(); ++i) {
          run.input(fs::is_directory(grids[i]) ? (fs::path(grids[i]) / "grid.json").string()
                                               : grids[i]);
          owned.push_back(read_grid(grids[i]));
          ptrs.push_back(owned.back().get());
          cl.push_back(names[i].c_str());
        }
        run.parameters = {{"grids", grids}, {"labels", names}};
        fs::create_directories(run.out_dir);
        check(mpl_features_write(ptrs.data(), cl.data(), ptrs.size(),
                                 run.out("features.csv").c_str()));
      };
    });
  }

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Rectangle-module closed forms");
  oracle->require_subcommand(1);
  {
    static std::string rects, other, x, a, b, weight = "1,1", region, q = "2";
    static int k = 1, k_max = 1;
    static double resolution = 0.1;
    auto* ol = oracle->add_subcommand("landscape", "Landscape value at a point");
    ol->add_option("rects", rects)->required();
    ol->add_option("--k", k)->capture_default_str();
    ol->add_option("--x", x, "x1,x2")->required();
    ol->add_option("--weight", weight)->capture_default_str();
    add_common(ol, run);
    ol->callback([&] {
      run.command = "oracle landscape";
      action = [&] {
        run.input(rects);
        const auto xv = parse_list(x, 2, "--x");
        const auto w = parse_list(weight, 2, "--weight");
        run.parameters = {{"rects", rects}, {"k", k}, {"x", xv}, {"weight", w}};
        auto r = read_rects(rects);
        double v = 0.0;
        check(mpl_rect_landscape(r.get(), k, xv[0], xv[1], w[0], w[1], &v));
        std::cout << fmt(v) << "\n";
        run.result = {{"landscape", v}};
      };
    });
    auto* orank = oracle->add_subcommand("rank", "Rank invariant between two grades");
    orank->add_option("rects", rects)->required();
    orank->add_option("--a", a, "a1,a2")->required();
    orank->add_option("--b", b, "b1,b2")->required();
    add_common(orank, run);
    orank->callback([&] {
      run.command = "oracle rank";
      action = [&] {
        run.input(rects);
        const auto av = parse_list(a, 2, "--a"), bv = parse_list(b, 2, "--b");
        run.parameters = {{"rects", rects}, {"a", av}, {"b", bv}};
        auto r = read_rects(rects);
        int v = 0;
        check(mpl_rect_rank(r.get(), av[0], av[1], bv[0], bv[1], &v));
        std::cout << v << "\n";
        run.result = {{"rank", v}};
      };
    });
    auto* og = oracle->add_subcommand("grid", "Closed-form landscape grid");
    og->add_option("rects", rects)->required();
    og->add_option("--region", region)->required();
    og->add_option("--resolution", resolution)->capture_default_str();
    og->add_option("--kmax", k_max)->capture_default_str();
    og->add_option("--weight", weight)->capture_default_str();
    add_common(og, run);
    og->callback([&] {
      run.command = "oracle grid";
      action = [&] {
        run.input(rects);
        const mpl_region reg = parse_region(region, "--region");
        const auto w = parse_list(weight, 2, "--weight");
        run.parameters = {{"rects", rects}, {"region", region_json(reg)},
                          {"resolution", resolution}, {"kmax", k_max}, {"weight", w}};
        auto r = read_rects(rects);
        mpl_grid* g = nullptr;
        check(mpl_rect_grid(r.get(), &reg, resolution, k_max, w[0], w[1], &g));
        Grid gg(g);
        check(mpl_grid_write(g, run.out_dir.c_str(), 0));
      };
    });
    auto* oc = oracle->add_subcommand("complex", "Complex realizing the rectangle module in H1");
    oc->add_option("rects", rects)->required();
    add_common(oc, run);
    oc->callback([&] {
      run.command = "oracle complex";
      action = [&] {
        run.input(rects);
        run.parameters = {{"rects", rects}};
        auto r = read_rects(rects);
        mpl_complex* c = nullptr;
        check(mpl_complex_from_rects(r.get(), &c));
        Complex cg(c);
        check(mpl_complex_write(c, run.out("complex.txt").c_str()));
      };
    });
    auto* ow = oracle->add_subcommand("wasserstein", "Persistence weighted Wasserstein distance");
    ow->add_option("rects", rects)->required();
    ow->add_option("other", other)->required();
    ow->add_option("--q", q)->capture_default_str();
    add_common(ow, run);
    ow->callback([&] {
      run.command = "oracle wasserstein";
      action = [&] {
        run.input(rects);
        run.input(other);
        const double qv = parse_list(q, 1, "--q")[0];
        run.parameters = {{"rects", rects}, {"other", other}, {"q", q}};
        auto ra = read_rects(rects), rb = read_rects(other);
        double v = 0.0;
        check(mpl_rect_wasserstein(ra.get(), rb.get(), qv, &v));
        std::cout << fmt(v) << "\n";
        run.result = {{"wasserstein", v}};
      };
    });
    auto* oi = oracle->add_subcommand("interleaving", "Interleaving distance of two rectangles");
    oi->add_option("rects", rects)->required();
    oi->add_option("other", other)->required();
    add_common(oi, run);
    oi->callback([&] {
      run.command = "oracle interleaving";
      action = [&] {
        run.input(rects);
        run.input(other);
        run.parameters = {{"rects", rects}, {"other", other}};
        auto ra = read_rects(rects), rb = read_rects(other);
        double v = 0.0;
        check(mpl_rect_interleaving(ra.get(), rb.get(), &v));
        std::cout << fmt(v) << "\n";
        run.result = {{"interleaving", v}};
      };
    });
  }

  // experiment
  auto* exp = app.add_subcommand("experiment", "End-to-end experiments");
  exp->require_subcommand(1);
  {
    static mpl_circles_config cc;
    mpl_circles_config_default(&cc);
    auto* c = exp->add_subcommand("circles", "Two colourings of noisy concentric circles");
    c->add_option("--samples", cc.samples)->capture_default_str();
    c->add_option("--points", cc.points_per_circle, "Points per circle")->capture_default_str();
    c->add_option("--noise", cc.noise)->capture_default_str();
    c->add_option("--resolution", cc.resolution)->capture_default_str();
    add_common(c, run);
    add_seed(c, run);
    c->callback([&] {
      run.command = "experiment circles";
      run.has_seed = true;
      action = [&] {
        cc.seed = run.seed;
        cc.threads = run.threads;
        run.parameters = {{"samples", cc.samples}, {"points", cc.points_per_circle},
                          {"noise", cc.noise}, {"resolution", cc.resolution},
                          {"region", region_json(cc.region)}, {"k_max", cc.k_max},
                          {"functional_k", cc.functional_k},
                          {"functional_box", region_json(cc.functional_box)},
                          {"alpha", cc.alpha}};
        mpl_circles_summary s{};
        check(mpl_experiment_circles(&cc, run.out_dir.c_str(), &s));
        std::cout << "mean A " << fmt(s.mean_a) << " CI [" << fmt(s.ci_a_lo) << ", "
                  << fmt(s.ci_a_hi) << "]\n"
                  << "mean B " << fmt(s.mean_b) << " CI [" << fmt(s.ci_b_lo) << ", "
                  << fmt(s.ci_b_hi) << "]\n"
                  << "Welch t " << fmt(s.t) << " df " << fmt(s.df) << " p " << fmt(s.p_value)
                  << "\n";
      };
    });

    static mpl_modes_config mc;
    mpl_modes_config_default(&mc);
    auto* m = exp->add_subcommand("modes", "Mode count from the KDE bandwidth surface");
    m->add_option("--resolution", mc.resolution)->capture_default_str();
    m->add_option("--kmax", mc.k_max)->capture_default_str();
    static std::string modes_region = "0.3,4,0.7,1", modes_weight = "1,1";
    m->add_option("--region", modes_region, "x1_min,x1_max,x2_min,x2_max")->capture_default_str();
    m->add_option("--weight", modes_weight, "w1,w2 with max 1")->capture_default_str();
    add_common(m, run);
    add_seed(m, run);
    m->callback([&] {
      run.command = "experiment modes";
      run.has_seed = true;
      action = [&] {
        mc.seed = run.seed;
        mc.threads = run.threads;
        mc.region = parse_region(modes_region, "--region");
        const auto w = parse_list(modes_weight, 2, "--weight");
        mc.w1 = w[0];
        mc.w2 = w[1];
        run.parameters = {{"sigma_range", {mc.sigma_min, mc.sigma_max}}, {"n_sigma", mc.n_sigma},
                          {"x_range", {mc.x_min, mc.x_max}}, {"n_x", mc.n_x},
                          {"region", region_json(mc.region)}, {"resolution", mc.resolution},
                          {"k_max", mc.k_max}, {"weight", w}};
        if (mc.k_max < 1) usage_error("--kmax must be positive");
        std::vector<double> norms(mc.k_max);
        check(mpl_experiment_modes(&mc, run.out_dir.c_str(), norms.data()));
        for (int k = 0; k < mc.k_max; ++k) {
          std::cout << "sup lambda_" << k + 1 << " " << fmt(norms[k]) << "\n";
        }
      };
    });

    static mpl_curvature_config vc;
    mpl_curvature_config_default(&vc);
    auto* v = exp->add_subcommand("curvature", "Discs of curvature -1, 0, +1");
    v->add_option("--samples", vc.samples)->capture_default_str();
    v->add_option("--points", vc.points)->capture_default_str();
    v->add_option("--resolution", vc.resolution)->capture_default_str();
    add_common(v, run);
    add_seed(v, run);
    v->callback([&] {
      run.command = "experiment curvature";
      run.has_seed = true;
      action = [&] {
        vc.seed = run.seed;
        vc.threads = run.threads;
        run.parameters = {{"samples", vc.samples}, {"points", vc.points},
                          {"codensity_k", vc.codensity_k}, {"region", region_json(vc.region)},
                          {"resolution", vc.resolution}, {"k_max", vc.k_max}};
        double norms[3] = {0, 0, 0};
        check(mpl_experiment_curvature(&vc, run.out_dir.c_str(), norms));
        std::cout << "sup mean lambda_1: hyperbolic " << fmt(norms[0]) << " euclidean "
                  << fmt(norms[1]) << " elliptic " << fmt(norms[2]) << "\n";
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  try {
    action();
    run.finish();
  } catch (const Failure& f) {
    std::cerr << "mpland: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "mpland: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
