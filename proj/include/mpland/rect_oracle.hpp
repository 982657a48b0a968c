#pragma once

#include <optional>
#include <vector>

#include "mpland/bifiltration.hpp"
#include "mpland/multiland.hpp"

namespace mpland {

/// Indicator module of the box [lower, upper): closed below, open above.
struct Rect {
  Bigrade lower;
  Bigrade upper;

  void validate() const;
  double area() const { return (upper.x1 - lower.x1) * (upper.x2 - lower.x2); }
  double perimeter() const { return 2.0 * ((upper.x1 - lower.x1) + (upper.x2 - lower.x2)); }
  friend bool operator==(const Rect&, const Rect&) = default;
};

using RectangleBarcode = std::vector<Rect>;

/// Weighted landscape of a single rectangle at x:
/// max(0, min_i min(w_i x_i - w_i a_i, w_i b_i - w_i x_i)).
double rect_tent(const Rect& r, const Bigrade& x, const WeightVector& weight = WeightVector::unit());

/// k-th largest rect_tent over the barcode.
double rect_landscape(const RectangleBarcode& rects, int k, const Bigrade& x,
                      const WeightVector& weight = WeightVector::unit());

/// Number of rectangles containing both a and b (a <= b required).
int rect_rank(const RectangleBarcode& rects, const Bigrade& a, const Bigrade& b);

/// Half of the smaller side length: the shift at which the module's internal
/// maps vanish.
double half_min_width(const Rect& r);

/// Interleaving distance between two rectangle modules (nullopt = zero
/// module): either match the corners, or kill both.
double rect_interleaving_distance(const Rect& a, const std::optional<Rect>& b);

/// Persistence weighted q-Wasserstein distance by exhaustive matching after
/// padding with empty intervals. Both barcodes must have at most 6 rects.
double wasserstein_pw(const RectangleBarcode& a, const RectangleBarcode& b, double q);

RectangleBarcode shift_rects(const RectangleBarcode& rects, const Bigrade& v);

/// Landscape grid of a rectangle-decomposable module from the closed form.
LandscapeGrid rect_landscape_grid(const RectangleBarcode& rects, const Region& region,
                                  double resolution, int k_max,
                                  const WeightVector& weight = WeightVector::unit());

/// A bifiltered complex whose degree-1 homology is the given rectangle
/// module: one hollow triangle per rect, born at the lower corner and filled
/// by a 2-simplex with the bicritical grade {(b1, a2), (a1, b2)}.
BifilteredComplex rects_to_complex(const RectangleBarcode& rects);

}  // namespace mpland
