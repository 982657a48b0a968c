#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace mpland {

/// A point of the two-parameter filtration space.
struct Bigrade {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const Bigrade&, const Bigrade&) = default;
};

/// Coordinatewise partial order.
inline bool leq(const Bigrade& a, const Bigrade& b) {
  return a.x1 <= b.x1 && a.x2 <= b.x2;
}

/// Positive rescaling of the parameter axes, normalized so max(w1, w2) = 1.
struct WeightVector {
  double w1 = 1.0;
  double w2 = 1.0;

  static WeightVector unit() { return {1.0, 1.0}; }
  // Throws InputError unless both entries are positive and the larger is 1.
  void validate() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// Weighted sup norm max(w1 |h1|, w2 |h2|).
double weighted_norm(const Bigrade& h, const WeightVector& w);

struct Simplex {
  std::vector<int> vertices;     // strictly increasing
  std::vector<Bigrade> grades;   // antichain of minimal entry grades

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Immutable simplicial complex with multi-critical bigrades.
///
/// Simplices keep their input order; that index is the final tie-break when
/// slice filtrations are sorted. Construction checks vertex ordering, the
/// antichain property, and closure under faces. Monotonicity along faces is
/// not enforced here; see validate_monotone.
class BifilteredComplex {
 public:
  BifilteredComplex() = default;
  BifilteredComplex(int n_vertices, std::vector<Simplex> simplices);

  int n_vertices() const { return n_vertices_; }
  std::size_t size() const { return dims_.size(); }
  bool empty() const { return dims_.empty(); }
  int max_dim() const { return static_cast<int>(by_dim_.size()) - 1; }

  int dim(std::size_t s) const { return dims_[s]; }
  std::span<const int> vertices(std::size_t s) const {
    return {vertex_data_.data() + vertex_offset_[s],
            vertex_data_.data() + vertex_offset_[s + 1]};
  }
  std::span<const Bigrade> grades(std::size_t s) const {
    return {grade_data_.data() + grade_offset_[s],
            grade_data_.data() + grade_offset_[s + 1]};
  }
  std::span<const int> facets(std::size_t s) const {
    return {facet_data_.data() + facet_offset_[s],
            facet_data_.data() + facet_offset_[s + 1]};
  }
  std::span<const int> cofacets(std::size_t s) const {
    return {cofacet_data_.data() + cofacet_offset_[s],
            cofacet_data_.data() + cofacet_offset_[s + 1]};
  }
  // Indices of all simplices of dimension d, in input order.
  std::span<const int> of_dim(int d) const;

  // Index of the simplex with exactly these (sorted) vertices, or -1.
  long find(std::span<const int> vertices) const;

  Simplex simplex(std::size_t s) const;
  std::vector<Simplex> simplices() const;

  // Flat storage of all grades, addressed by grade_range(s).
  const std::vector<Bigrade>& all_grades() const { return grade_data_; }
  std::size_t grade_begin(std::size_t s) const { return grade_offset_[s]; }
  std::size_t grade_end(std::size_t s) const { return grade_offset_[s + 1]; }

 private:
  int n_vertices_ = 0;
  std::vector<int> dims_;
  std::vector<std::size_t> vertex_offset_{0};
  std::vector<int> vertex_data_;
  std::vector<std::size_t> grade_offset_{0};
  std::vector<Bigrade> grade_data_;
  std::vector<std::size_t> facet_offset_{0};
  std::vector<int> facet_data_;
  std::vector<std::size_t> cofacet_offset_{0};
  std::vector<int> cofacet_data_;
  std::vector<std::vector<int>> by_dim_;
};

/// Minimal elements of a set of bigrades (duplicates collapsed), sorted by x1.
std::vector<Bigrade> minimal_elements(std::vector<Bigrade> grades);

/// Function-Rips bifiltration: simplex grade (diameter, max vertex value).
/// `distances` is row-major n x n.
BifilteredComplex build_function_rips(std::span<const double> distances,
                                      std::span<const double> vertex_values,
                                      double max_scale, int max_dim);

/// Closure of a pure 2-dimensional triangulation; every face receives the
/// minimal elements of its cofaces' grades.
BifilteredComplex build_closure_bicomplex(
    std::span<const std::array<int, 3>> triangles,
    std::span<const Bigrade> triangle_grades);

struct MonotoneViolation {
  int face;
  int coface;
  friend bool operator==(const MonotoneViolation&,
                         const MonotoneViolation&) = default;
};

/// Face/coface pairs where some coface grade has no face grade below it.
std::vector<MonotoneViolation> validate_monotone(const BifilteredComplex& c);

/// A 1-parameter filtration obtained by restricting to the weighted diagonal
/// through `base`. times[s] is the entry time of simplex s.
struct SliceFiltration {
  std::vector<double> times;
  Bigrade base;
  WeightVector weight;
};

/// Entry time of a single grade on the line through `base`:
/// max_i (w_i a_i - w_i p_i). The products are formed before the
/// subtraction so that rescaling grades and base by w and pushing with unit
/// weight yields bitwise-identical times.
inline double line_time(const Bigrade& a, const Bigrade& base,
                        const WeightVector& w) {
  const double t1 = w.w1 * a.x1 - w.w1 * base.x1;
  const double t2 = w.w2 * a.x2 - w.w2 * base.x2;
  return t1 < t2 ? t2 : t1;
}

SliceFiltration push_to_line(const BifilteredComplex& c, const Bigrade& base,
                             const WeightVector& weight);

/// Per-axis strictly increasing values; size() is the largest gap.
struct GridFunction {
  std::vector<double> axis1;
  std::vector<double> axis2;

  void validate() const;
  double size() const;
};

/// Moves every grade coordinate up to the smallest grid value >= it and
/// re-minimizes the antichains. Grades above the last grid value are an
/// input error.
BifilteredComplex snap_to_grid(const BifilteredComplex& c,
                               const GridFunction& grid);

/// Translates every grade by v.
BifilteredComplex shift_bigrades(const BifilteredComplex& c, const Bigrade& v);

}  // namespace mpland
