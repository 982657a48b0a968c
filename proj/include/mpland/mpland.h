/* C interface to the mpland library.
 *
 * Every fallible call returns an mpl_status. On failure, mpl_last_error()
 * describes the problem; the message is thread local and valid until the next
 * failing call on the same thread. Objects are opaque handles released with
 * their matching *_free function. Arrays returned through double** are
 * released with mpl_array_free, strings with mpl_string_free.
 *
 * Landscape grid values are laid out (k, x2, x1) row-major: x1 varies
 * fastest, x2 ascends, k runs from 1 to k_max.
 */
#ifndef MPLAND_MPLAND_H
#define MPLAND_MPLAND_H

#include <stddef.h>
#include <stdint.h>

#if defined(MPLAND_BUILDING)
#define MPL_API __attribute__((visibility("default")))
#else
#define MPL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mpl_status {
  MPL_OK = 0,
  MPL_ERR_USAGE = 1,     /* invalid argument (null pointer, bad enum) */
  MPL_ERR_INPUT = 2,     /* malformed or out-of-domain input data */
  MPL_ERR_INTERNAL = 3   /* internal invariant violated */
} mpl_status;

typedef struct mpl_complex mpl_complex;
typedef struct mpl_grid mpl_grid;
typedef struct mpl_rects mpl_rects;

typedef struct mpl_region {
  double x1_min, x1_max, x2_min, x2_max;
} mpl_region;

MPL_API const char* mpl_version(void);
MPL_API const char* mpl_last_error(void);
MPL_API void mpl_array_free(double* array);
MPL_API void mpl_string_free(char* str);

/* ---- bifiltered complexes ---- */

/* Reads the text format "v0 v1 ... ; a1 a2 [; a1' a2' ...]". */
MPL_API mpl_status mpl_complex_read(const char* path, mpl_complex** out);
MPL_API mpl_status mpl_complex_parse(const char* text, mpl_complex** out);
MPL_API mpl_status mpl_complex_write(const mpl_complex* c, const char* path);
/* Function-Rips bifiltration of an n x n row-major distance matrix. */
MPL_API mpl_status mpl_complex_function_rips(const double* distances, size_t n,
                                             const double* vertex_values, double max_scale,
                                             int max_dim, mpl_complex** out);
/* Closure of the triangulated KDE bandwidth surface. */
MPL_API mpl_status mpl_complex_kde_surface(const double* data, size_t n_data,
                                           const double* sigmas, size_t n_sigmas,
                                           const double* xs, size_t n_xs, mpl_complex** out);
/* Rect module realized as a complex (H1 equals the rectangles). */
MPL_API mpl_status mpl_complex_from_rects(const mpl_rects* rects, mpl_complex** out);
MPL_API size_t mpl_complex_size(const mpl_complex* c);
MPL_API void mpl_complex_free(mpl_complex* c);

/* Barcode along the weighted diagonal through (x1, x2) as
 * "dim,birth,death" CSV text. */
MPL_API mpl_status mpl_barcode_csv(const mpl_complex* c, double x1, double x2, double w1,
                                   double w2, int hom_dim, char** out);

/* ---- landscapes ---- */

MPL_API mpl_status mpl_eval_point(const mpl_complex* c, double x1, double x2, int k, double w1,
                                  double w2, int hom_dim, double* out);
MPL_API mpl_status mpl_landscape_grid(const mpl_complex* c, const mpl_region* region,
                                      double resolution, int k_max, double w1, double w2,
                                      int hom_dim, unsigned threads, mpl_grid** out);
MPL_API mpl_status mpl_grid_read(const char* path, mpl_grid** out);
/* Writes grid.json and one CSV (and optionally PGM) per k into dir. */
MPL_API mpl_status mpl_grid_write(const mpl_grid* g, const char* dir, int pgm);
MPL_API mpl_status mpl_grid_shape(const mpl_grid* g, int* k_max, int* n2, int* n1);
/* Borrowed pointer to k_max * n2 * n1 values, valid while g lives. */
MPL_API const double* mpl_grid_values(const mpl_grid* g);
MPL_API mpl_status mpl_grid_recover_rank(const mpl_grid* g, double a1, double a2, double b1,
                                         double b2, int* out);
MPL_API void mpl_grid_free(mpl_grid* g);

/* ---- statistics ---- */

MPL_API mpl_status mpl_grid_mean(const mpl_grid* const* grids, size_t count, mpl_grid** out);
/* q >= 1; pass INFINITY for the sup norm. */
MPL_API mpl_status mpl_q_distance(const mpl_grid* a, const mpl_grid* b, double q, double* out);
MPL_API mpl_status mpl_functional(const mpl_grid* g, int k, const mpl_region* box,
                                  double* out);
MPL_API mpl_status mpl_confidence_interval(const double* values, size_t n, double alpha,
                                           double* lo, double* hi);
MPL_API mpl_status mpl_ttest(const double* a, size_t na, const double* b, size_t nb,
                             double* t, double* df, double* p_value);
MPL_API mpl_status mpl_permutation_test(const double* a, size_t na, const double* b, size_t nb,
                                        int n_perm, uint64_t seed, double* p_value);
/* Feature CSV, one row per grid in vectorize order. */
MPL_API mpl_status mpl_features_write(const mpl_grid* const* grids, const char* const* labels,
                                      size_t count, const char* path);

/* ---- rectangle-decomposable modules ---- */

MPL_API mpl_status mpl_rects_read(const char* path, mpl_rects** out);
/* coords holds a1 a2 b1 b2 per rectangle. */
MPL_API mpl_status mpl_rects_create(const double* coords, size_t count, mpl_rects** out);
MPL_API size_t mpl_rects_count(const mpl_rects* r);
MPL_API mpl_status mpl_rect_landscape(const mpl_rects* r, int k, double x1, double x2,
                                      double w1, double w2, double* out);
MPL_API mpl_status mpl_rect_rank(const mpl_rects* r, double a1, double a2, double b1,
                                 double b2, int* out);
MPL_API mpl_status mpl_rect_grid(const mpl_rects* r, const mpl_region* region,
                                 double resolution, int k_max, double w1, double w2,
                                 mpl_grid** out);
MPL_API mpl_status mpl_rect_wasserstein(const mpl_rects* a, const mpl_rects* b, double q,
                                        double* out);
/* Interleaving distance between single rectangles; b may hold zero rects. */
MPL_API mpl_status mpl_rect_interleaving(const mpl_rects* a, const mpl_rects* b, double* out);
MPL_API void mpl_rects_free(mpl_rects* r);

/* ---- data generation and array files ---- */

/* colouring: 'A' or 'B'. points: 2n x 2; values: 2n colours. */
MPL_API mpl_status mpl_gen_circles(int n_per_circle, char colouring, double noise,
                                   uint64_t seed, double** points, double** values,
                                   size_t* n_points);
/* space: "hyperbolic", "euclidean" or "elliptic". distances: n x n. */
MPL_API mpl_status mpl_gen_disc(const char* space, int n, uint64_t seed, double** distances);
MPL_API mpl_status mpl_trimodal_fixture(uint64_t seed, double** data, size_t* n);
MPL_API mpl_status mpl_knn_codensity(const double* distances, size_t n, int k, double** out);
MPL_API mpl_status mpl_euclidean_distances(const double* points, size_t n, int dim,
                                           double** out);

/* Point CSV with optional trailing f column (values is NULL when absent). */
MPL_API mpl_status mpl_read_point_cloud(const char* path, double** coords, size_t* n, int* dim,
                                        double** values);
MPL_API mpl_status mpl_write_point_cloud(const char* path, const double* coords, size_t n,
                                         int dim, const double* values);
/* Lower-triangular distance file; out is the full n x n matrix. */
MPL_API mpl_status mpl_read_distance_matrix(const char* path, double** out, size_t* n);
MPL_API mpl_status mpl_write_distance_matrix(const char* path, const double* distances,
                                             size_t n);
MPL_API mpl_status mpl_read_values(const char* path, double** out, size_t* n);
MPL_API mpl_status mpl_write_values(const char* path, const double* values, size_t n);
/* FNV-1a hash of a file as 16 hex digits. */
MPL_API mpl_status mpl_file_hash(const char* path, char** out);

/* ---- experiments ---- */

typedef struct mpl_circles_config {
  int samples;
  int points_per_circle;
  double noise;
  uint64_t seed;
  mpl_region region;
  double resolution;
  int k_max;
  int functional_k;
  mpl_region functional_box;
  double alpha;
  unsigned threads;
} mpl_circles_config;

typedef struct mpl_circles_summary {
  double mean_a, mean_b;
  double ci_a_lo, ci_a_hi, ci_b_lo, ci_b_hi;
  double t, df, p_value;
} mpl_circles_summary;

typedef struct mpl_modes_config {
  uint64_t seed;
  double sigma_min, sigma_max;
  int n_sigma;
  double x_min, x_max;
  int n_x;
  mpl_region region;
  double resolution;
  int k_max;
  double w1, w2;
  unsigned threads;
} mpl_modes_config;

typedef struct mpl_curvature_config {
  int samples;
  int points;
  int codensity_k;
  uint64_t seed;
  mpl_region region;
  double resolution;
  int k_max;
  unsigned threads;
} mpl_curvature_config;

/* Defaults match the library's experiment settings. */
MPL_API void mpl_circles_config_default(mpl_circles_config* cfg);
MPL_API void mpl_modes_config_default(mpl_modes_config* cfg);
MPL_API void mpl_curvature_config_default(mpl_curvature_config* cfg);

/* Each runner writes its report files under out_dir. */
MPL_API mpl_status mpl_experiment_circles(const mpl_circles_config* cfg, const char* out_dir,
                                          mpl_circles_summary* summary);
/* sup_norms receives k_max entries. */
MPL_API mpl_status mpl_experiment_modes(const mpl_modes_config* cfg, const char* out_dir,
                                        double* sup_norms);
/* sup_norms receives hyperbolic, euclidean, elliptic. */
MPL_API mpl_status mpl_experiment_curvature(const mpl_curvature_config* cfg,
                                            const char* out_dir, double* sup_norms);

#ifdef __cplusplus
}
#endif

#endif /* MPLAND_MPLAND_H */
