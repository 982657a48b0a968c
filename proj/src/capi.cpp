#include "mpland/mpland.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "mpland/datagen.hpp"
#include "mpland/error.hpp"
#include "mpland/experiments.hpp"
#include "mpland/io.hpp"
#include "mpland/multiland.hpp"
#include "mpland/persistence.hpp"
#include "mpland/rect_oracle.hpp"
#include "mpland/reports.hpp"
#include "mpland/stats.hpp"

struct mpl_complex {
  mpland::BifilteredComplex value;
};
struct mpl_grid {
  mpland::LandscapeGrid value;
};
struct mpl_rects {
  mpland::RectangleBarcode value;
};

namespace {

thread_local std::string last_error;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class Fn>
mpl_status guarded(Fn&& fn) {
  try {
    fn();
    return MPL_OK;
  } catch (const UsageError& e) {
    last_error = e.what();
    return MPL_ERR_USAGE;
  } catch (const mpland::InputError& e) {
    last_error = e.what();
    return MPL_ERR_INPUT;
  } catch (const mpland::InvariantError& e) {
    last_error = std::string("internal invariant violated: ") + e.what();
    return MPL_ERR_INTERNAL;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MPL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return MPL_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw UsageError(std::string(what) + " must not be null");
}

double* copy_array(const std::vector<double>& v) {
  auto* out = static_cast<double*>(std::malloc(std::max<std::size_t>(1, v.size()) * sizeof(double)));
  if (!out) throw std::bad_alloc();
  if (!v.empty()) std::memcpy(out, v.data(), v.size() * sizeof(double));
  return out;
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

mpland::Region region_of(const mpl_region* r) {
  need(r, "region");
  return {r->x1_min, r->x1_max, r->x2_min, r->x2_max};
}

mpl_region to_c(const mpland::Region& r) { return {r.x1_min, r.x1_max, r.x2_min, r.x2_max}; }

std::span<const double> span_of(const double* p, std::size_t n) {
  if (n > 0) need(p, "array");
  return {p, n};
}

std::size_t square(std::size_t n) { return n * n; }

}  // namespace

extern "C" {

const char* mpl_version(void) { return MPLAND_VERSION; }
const char* mpl_last_error(void) { return last_error.c_str(); }
void mpl_array_free(double* array) { std::free(array); }
void mpl_string_free(char* str) { std::free(str); }

mpl_status mpl_complex_read(const char* path, mpl_complex** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new mpl_complex{mpland::io::read_complex(path)};
  });
}

mpl_status mpl_complex_parse(const char* text, mpl_complex** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    std::istringstream in(text);
    *out = new mpl_complex{mpland::io::parse_complex(in, "<text>")};
  });
}

mpl_status mpl_complex_write(const mpl_complex* c, const char* path) {
  return guarded([&] {
    need(c, "complex");
    need(path, "path");
    mpland::io::write_file(path, mpland::io::format_complex(c->value));
  });
}

mpl_status mpl_complex_function_rips(const double* distances, size_t n,
                                     const double* vertex_values, double max_scale, int max_dim,
                                     mpl_complex** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mpl_complex{mpland::build_function_rips(span_of(distances, square(n)),
                                                       span_of(vertex_values, n), max_scale,
                                                       max_dim)};
  });
}

mpl_status mpl_complex_kde_surface(const double* data, size_t n_data, const double* sigmas,
                                   size_t n_sigmas, const double* xs, size_t n_xs,
                                   mpl_complex** out) {
  return guarded([&] {
    need(out, "out");
    const auto surface = mpland::gen_kde_surface(span_of(data, n_data), span_of(sigmas, n_sigmas),
                                                 span_of(xs, n_xs));
    *out = new mpl_complex{surface.complex()};
  });
}

mpl_status mpl_complex_from_rects(const mpl_rects* rects, mpl_complex** out) {
  return guarded([&] {
    need(rects, "rects");
    need(out, "out");
    *out = new mpl_complex{mpland::rects_to_complex(rects->value)};
  });
}

size_t mpl_complex_size(const mpl_complex* c) { return c ? c->value.size() : 0; }
void mpl_complex_free(mpl_complex* c) { delete c; }

mpl_status mpl_barcode_csv(const mpl_complex* c, double x1, double x2, double w1, double w2,
                           int hom_dim, char** out) {
  return guarded([&] {
    need(c, "complex");
    need(out, "out");
    const mpland::WeightVector w{w1, w2};
    w.validate();
    const auto slice = mpland::push_to_line(c->value, {x1, x2}, w);
    *out = copy_string(mpland::io::format_barcode(mpland::compute_barcode(c->value, slice, hom_dim)));
  });
}

mpl_status mpl_eval_point(const mpl_complex* c, double x1, double x2, int k, double w1,
                          double w2, int hom_dim, double* out) {
  return guarded([&] {
    need(c, "complex");
    need(out, "out");
    *out = mpland::eval_point(c->value, {x1, x2}, k, {w1, w2}, hom_dim);
  });
}

mpl_status mpl_landscape_grid(const mpl_complex* c, const mpl_region* region, double resolution,
                              int k_max, double w1, double w2, int hom_dim, unsigned threads,
                              mpl_grid** out) {
  return guarded([&] {
    need(c, "complex");
    need(out, "out");
    mpland::GridOptions opts;
    opts.threads = threads;
    *out = new mpl_grid{mpland::compute_landscape_grid(c->value, region_of(region), resolution,
                                                       k_max, {w1, w2}, hom_dim, opts)};
  });
}

mpl_status mpl_grid_read(const char* path, mpl_grid** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new mpl_grid{mpland::io::read_grid(path)};
  });
}

mpl_status mpl_grid_write(const mpl_grid* g, const char* dir, int pgm) {
  return guarded([&] {
    need(g, "grid");
    need(dir, "dir");
    mpland::io::write_grid(g->value, dir, pgm != 0);
  });
}

mpl_status mpl_grid_shape(const mpl_grid* g, int* k_max, int* n2, int* n1) {
  return guarded([&] {
    need(g, "grid");
    if (k_max) *k_max = g->value.k_max();
    if (n2) *n2 = g->value.n2();
    if (n1) *n1 = g->value.n1();
  });
}

const double* mpl_grid_values(const mpl_grid* g) { return g ? g->value.values().data() : nullptr; }

mpl_status mpl_grid_recover_rank(const mpl_grid* g, double a1, double a2, double b1, double b2,
                                 int* out) {
  return guarded([&] {
    need(g, "grid");
    need(out, "out");
    *out = mpland::recover_rank_from_landscape(g->value, {a1, a2}, {b1, b2});
  });
}

void mpl_grid_free(mpl_grid* g) { delete g; }

mpl_status mpl_grid_mean(const mpl_grid* const* grids, size_t count, mpl_grid** out) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) need(grids, "grids");
    std::vector<mpland::LandscapeGrid> gs;
    for (size_t i = 0; i < count; ++i) {
      need(grids[i], "grid");
      gs.push_back(grids[i]->value);
    }
    *out = new mpl_grid{mpland::mean_landscape(gs)};
  });
}

mpl_status mpl_q_distance(const mpl_grid* a, const mpl_grid* b, double q, double* out) {
  return guarded([&] {
    need(a, "grid");
    need(b, "grid");
    need(out, "out");
    *out = mpland::q_distance(a->value, b->value, q);
  });
}

mpl_status mpl_functional(const mpl_grid* g, int k, const mpl_region* box, double* out) {
  return guarded([&] {
    need(g, "grid");
    need(out, "out");
    *out = mpland::functional_integral(g->value, {k, region_of(box)});
  });
}

mpl_status mpl_confidence_interval(const double* values, size_t n, double alpha, double* lo,
                                   double* hi) {
  return guarded([&] {
    need(lo, "lo");
    need(hi, "hi");
    const auto ci = mpland::confidence_interval(span_of(values, n), alpha);
    *lo = ci.first;
    *hi = ci.second;
  });
}

mpl_status mpl_ttest(const double* a, size_t na, const double* b, size_t nb, double* t,
                     double* df, double* p_value) {
  return guarded([&] {
    const auto r = mpland::two_sample_t(span_of(a, na), span_of(b, nb));
    if (t) *t = r.t;
    if (df) *df = r.df;
    if (p_value) *p_value = r.p_value;
  });
}

mpl_status mpl_permutation_test(const double* a, size_t na, const double* b, size_t nb,
                                int n_perm, uint64_t seed, double* p_value) {
  return guarded([&] {
    need(p_value, "p_value");
    *p_value = mpland::permutation_test(span_of(a, na), span_of(b, nb), n_perm, seed);
  });
}

mpl_status mpl_features_write(const mpl_grid* const* grids, const char* const* labels,
                              size_t count, const char* path) {
  return guarded([&] {
    need(path, "path");
    if (count > 0) {
      need(grids, "grids");
      need(labels, "labels");
    }
    std::vector<mpland::LandscapeGrid> gs;
    std::vector<std::string> ls;
    for (size_t i = 0; i < count; ++i) {
      need(grids[i], "grid");
      need(labels[i], "label");
      gs.push_back(grids[i]->value);
      ls.emplace_back(labels[i]);
    }
    mpland::io::write_file(path, mpland::io::format_features(gs, ls));
  });
}

mpl_status mpl_rects_read(const char* path, mpl_rects** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new mpl_rects{mpland::io::read_rects(path)};
  });
}

mpl_status mpl_rects_create(const double* coords, size_t count, mpl_rects** out) {
  return guarded([&] {
    need(out, "out");
    const auto c = span_of(coords, 4 * count);
    mpland::RectangleBarcode rects;
    for (size_t i = 0; i < count; ++i) {
      mpland::Rect r{{c[4 * i], c[4 * i + 1]}, {c[4 * i + 2], c[4 * i + 3]}};
      r.validate();
      rects.push_back(r);
    }
    *out = new mpl_rects{std::move(rects)};
  });
}

size_t mpl_rects_count(const mpl_rects* r) { return r ? r->value.size() : 0; }

mpl_status mpl_rect_landscape(const mpl_rects* r, int k, double x1, double x2, double w1,
                              double w2, double* out) {
  return guarded([&] {
    need(r, "rects");
    need(out, "out");
    const mpland::WeightVector w{w1, w2};
    w.validate();
    *out = mpland::rect_landscape(r->value, k, {x1, x2}, w);
  });
}

mpl_status mpl_rect_rank(const mpl_rects* r, double a1, double a2, double b1, double b2,
                         int* out) {
  return guarded([&] {
    need(r, "rects");
    need(out, "out");
    *out = mpland::rect_rank(r->value, {a1, a2}, {b1, b2});
  });
}

mpl_status mpl_rect_grid(const mpl_rects* r, const mpl_region* region, double resolution,
                         int k_max, double w1, double w2, mpl_grid** out) {
  return guarded([&] {
    need(r, "rects");
    need(out, "out");
    *out = new mpl_grid{
        mpland::rect_landscape_grid(r->value, region_of(region), resolution, k_max, {w1, w2})};
  });
}

mpl_status mpl_rect_wasserstein(const mpl_rects* a, const mpl_rects* b, double q, double* out) {
  return guarded([&] {
    need(a, "rects");
    need(b, "rects");
    need(out, "out");
    *out = mpland::wasserstein_pw(a->value, b->value, q);
  });
}

mpl_status mpl_rect_interleaving(const mpl_rects* a, const mpl_rects* b, double* out) {
  return guarded([&] {
    need(a, "rects");
    need(b, "rects");
    need(out, "out");
    if (a->value.size() != 1 || b->value.size() > 1) {
      throw mpland::InputError("interleaving distance needs one rectangle and at most one other");
    }
    std::optional<mpland::Rect> other;
    if (!b->value.empty()) other = b->value.front();
    *out = mpland::rect_interleaving_distance(a->value.front(), other);
  });
}

void mpl_rects_free(mpl_rects* r) { delete r; }

mpl_status mpl_gen_circles(int n_per_circle, char colouring, double noise, uint64_t seed,
                           double** points, double** values, size_t* n_points) {
  return guarded([&] {
    need(points, "points");
    need(values, "values");
    need(n_points, "n_points");
    if (colouring != 'A' && colouring != 'B') throw UsageError("colouring must be 'A' or 'B'");
    const auto s = mpland::gen_circles(
        n_per_circle, colouring == 'A' ? mpland::Colouring::A : mpland::Colouring::B, noise, seed);
    *points = copy_array(s.points);
    *values = copy_array(s.vertex_values);
    *n_points = static_cast<size_t>(s.n);
  });
}

mpl_status mpl_gen_disc(const char* space, int n, uint64_t seed, double** distances) {
  return guarded([&] {
    need(space, "space");
    need(distances, "distances");
    mpland::DiscSpace sp;
    const std::string name = space;
    if (name == "hyperbolic") {
      sp = mpland::DiscSpace::hyperbolic;
    } else if (name == "euclidean") {
      sp = mpland::DiscSpace::euclidean;
    } else if (name == "elliptic") {
      sp = mpland::DiscSpace::elliptic;
    } else {
      throw UsageError("unknown space '" + name + "'");
    }
    *distances = copy_array(mpland::gen_disc(sp, n, seed).distances);
  });
}

mpl_status mpl_trimodal_fixture(uint64_t seed, double** data, size_t* n) {
  return guarded([&] {
    need(data, "data");
    need(n, "n");
    const auto d = mpland::trimodal_fixture(seed);
    *data = copy_array(d);
    *n = d.size();
  });
}

mpl_status mpl_knn_codensity(const double* distances, size_t n, int k, double** out) {
  return guarded([&] {
    need(out, "out");
    *out = copy_array(
        mpland::knn_codensity(span_of(distances, square(n)), static_cast<int>(n), k));
  });
}

mpl_status mpl_euclidean_distances(const double* points, size_t n, int dim, double** out) {
  return guarded([&] {
    need(out, "out");
    if (dim < 1) throw UsageError("dimension must be positive");
    *out = copy_array(mpland::euclidean_distances(span_of(points, n * dim), dim));
  });
}

mpl_status mpl_read_point_cloud(const char* path, double** coords, size_t* n, int* dim,
                                double** values) {
  return guarded([&] {
    need(path, "path");
    need(coords, "coords");
    need(n, "n");
    need(dim, "dim");
    need(values, "values");
    const auto cloud = mpland::io::read_point_cloud(path);
    *coords = copy_array(cloud.coords);
    *values = cloud.values.empty() ? nullptr : copy_array(cloud.values);
    *n = static_cast<size_t>(cloud.n);
    *dim = cloud.dim;
  });
}

mpl_status mpl_write_point_cloud(const char* path, const double* coords, size_t n, int dim,
                                 const double* values) {
  return guarded([&] {
    need(path, "path");
    if (dim < 1) throw UsageError("dimension must be positive");
    mpland::io::PointCloud cloud;
    cloud.n = static_cast<int>(n);
    cloud.dim = dim;
    const auto c = span_of(coords, n * dim);
    cloud.coords.assign(c.begin(), c.end());
    if (values) cloud.values.assign(values, values + n);
    mpland::io::write_file(path, mpland::io::format_point_cloud(cloud));
  });
}

mpl_status mpl_read_distance_matrix(const char* path, double** out, size_t* n) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    need(n, "n");
    int count = 0;
    const auto d = mpland::io::read_distance_matrix(path, count);
    *out = copy_array(d);
    *n = static_cast<size_t>(count);
  });
}

mpl_status mpl_write_distance_matrix(const char* path, const double* distances, size_t n) {
  return guarded([&] {
    need(path, "path");
    const auto d = span_of(distances, square(n));
    mpland::io::write_file(path, mpland::io::format_distance_matrix({d.begin(), d.end()},
                                                                      static_cast<int>(n)));
  });
}

mpl_status mpl_read_values(const char* path, double** out, size_t* n) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    need(n, "n");
    const auto v = mpland::io::read_values(path);
    *out = copy_array(v);
    *n = v.size();
  });
}

mpl_status mpl_write_values(const char* path, const double* values, size_t n) {
  return guarded([&] {
    need(path, "path");
    const auto v = span_of(values, n);
    mpland::io::write_file(path, mpland::io::format_values({v.begin(), v.end()}));
  });
}

mpl_status mpl_file_hash(const char* path, char** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = copy_string(mpland::io::file_hash(path));
  });
}

void mpl_circles_config_default(mpl_circles_config* cfg) {
  if (!cfg) return;
  const mpland::CirclesConfig d;
  *cfg = {d.samples,    d.points_per_circle, d.noise,
          d.seed,       to_c(d.region),      d.resolution,
          d.k_max,      d.functional.k,      to_c(d.functional.box),
          d.alpha,      d.threads};
}

void mpl_modes_config_default(mpl_modes_config* cfg) {
  if (!cfg) return;
  const mpland::ModesConfig d;
  *cfg = {d.seed, d.sigma_min,      d.sigma_max,  d.n_sigma, d.x_min,  d.x_max,
          d.n_x,  to_c(d.region),   d.resolution, d.k_max,   d.weight.w1, d.weight.w2,
          d.threads};
}

void mpl_curvature_config_default(mpl_curvature_config* cfg) {
  if (!cfg) return;
  const mpland::CurvatureConfig d;
  *cfg = {d.samples, d.points, d.codensity_k, d.seed, to_c(d.region),
          d.resolution, d.k_max, d.threads};
}

mpl_status mpl_experiment_circles(const mpl_circles_config* c, const char* out_dir,
                                  mpl_circles_summary* summary) {
  return guarded([&] {
    need(c, "config");
    need(out_dir, "out_dir");
    mpland::CirclesConfig cfg;
    cfg.samples = c->samples;
    cfg.points_per_circle = c->points_per_circle;
    cfg.noise = c->noise;
    cfg.seed = c->seed;
    cfg.region = region_of(&c->region);
    cfg.resolution = c->resolution;
    cfg.k_max = c->k_max;
    cfg.functional = {c->functional_k, region_of(&c->functional_box)};
    cfg.alpha = c->alpha;
    cfg.threads = c->threads;
    const auto r = mpland::run_circles(cfg);
    mpland::io::write_circles_report(cfg, r, out_dir);
    if (summary) {
      summary->mean_a = mpland::sample_statistics(r.values_a).mean;
      summary->mean_b = mpland::sample_statistics(r.values_b).mean;
      summary->ci_a_lo = r.ci_a.first;
      summary->ci_a_hi = r.ci_a.second;
      summary->ci_b_lo = r.ci_b.first;
      summary->ci_b_hi = r.ci_b.second;
      summary->t = r.ttest.t;
      summary->df = r.ttest.df;
      summary->p_value = r.ttest.p_value;
    }
  });
}

mpl_status mpl_experiment_modes(const mpl_modes_config* c, const char* out_dir,
                                double* sup_norms) {
  return guarded([&] {
    need(c, "config");
    need(out_dir, "out_dir");
    mpland::ModesConfig cfg;
    cfg.seed = c->seed;
    cfg.sigma_min = c->sigma_min;
    cfg.sigma_max = c->sigma_max;
    cfg.n_sigma = c->n_sigma;
    cfg.x_min = c->x_min;
    cfg.x_max = c->x_max;
    cfg.n_x = c->n_x;
    cfg.region = region_of(&c->region);
    cfg.resolution = c->resolution;
    cfg.k_max = c->k_max;
    cfg.weight = {c->w1, c->w2};
    cfg.threads = c->threads;
    const auto r = mpland::run_modes(cfg);
    mpland::io::write_modes_report(cfg, r, out_dir);
    if (sup_norms) std::copy(r.sup_norms.begin(), r.sup_norms.end(), sup_norms);
  });
}

mpl_status mpl_experiment_curvature(const mpl_curvature_config* c, const char* out_dir,
                                    double* sup_norms) {
  return guarded([&] {
    need(c, "config");
    need(out_dir, "out_dir");
    mpland::CurvatureConfig cfg;
    cfg.samples = c->samples;
    cfg.points = c->points;
    cfg.codensity_k = c->codensity_k;
    cfg.seed = c->seed;
    cfg.region = region_of(&c->region);
    cfg.resolution = c->resolution;
    cfg.k_max = c->k_max;
    cfg.threads = c->threads;
    const auto r = mpland::run_curvature(cfg);
    mpland::io::write_curvature_report(cfg, r, out_dir);
    if (sup_norms) std::copy(r.sup_norms.begin(), r.sup_norms.end(), sup_norms);
  });
}

}  // extern "C"
