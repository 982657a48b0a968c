#include "mpland/bifiltration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <unordered_map>

#include "mpland/error.hpp"

namespace mpland {

namespace {

struct VertexKeyHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

std::string describe(std::span<const int> vertices) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) os << ',';
    os << vertices[i];
  }
  os << '}';
  return os.str();
}

}  // namespace

void WeightVector::validate() const {
  if (!(w1 > 0.0) || !(w2 > 0.0) || !std::isfinite(w1) || !std::isfinite(w2)) {
    throw InputError("weight entries must be positive and finite");
  }
  if (std::max(w1, w2) != 1.0) {
    throw InputError("weight vector must have max-norm 1");
  }
}

double weighted_norm(const Bigrade& h, const WeightVector& w) {
  return std::max(w.w1 * std::abs(h.x1), w.w2 * std::abs(h.x2));
}

std::vector<Bigrade> minimal_elements(std::vector<Bigrade> grades) {
  std::sort(grades.begin(), grades.end(), [](const Bigrade& a, const Bigrade& b) {
    return a.x1 != b.x1 ? a.x1 < b.x1 : a.x2 < b.x2;
  });
  std::vector<Bigrade> out;
  // After sorting by x1 ascending, a grade is minimal iff its x2 is strictly
  // below every x2 kept so far.
  for (const Bigrade& g : grades) {
    if (out.empty() || g.x2 < out.back().x2) out.push_back(g);
  }
  return out;
}

BifilteredComplex::BifilteredComplex(int n_vertices, std::vector<Simplex> simplices)
    : n_vertices_(n_vertices) {
  if (n_vertices < 0) throw InputError("negative vertex count");
  const std::size_t n = simplices.size();
  dims_.reserve(n);
  std::unordered_map<std::vector<int>, int, VertexKeyHash> index;
  index.reserve(n * 2);

  for (std::size_t s = 0; s < n; ++s) {
    Simplex& sx = simplices[s];
    if (sx.vertices.empty()) throw InputError("simplex with no vertices");
    for (std::size_t i = 0; i < sx.vertices.size(); ++i) {
      const int v = sx.vertices[i];
      if (v < 0 || v >= n_vertices) {
        throw InputError("vertex id out of range in simplex " + describe(sx.vertices));
      }
      if (i > 0 && sx.vertices[i - 1] >= v) {
        throw InputError("vertices not strictly increasing in simplex " +
                         describe(sx.vertices));
      }
    }
    if (sx.grades.empty()) {
      throw InputError("simplex " + describe(sx.vertices) + " has no grade");
    }
    for (const Bigrade& g : sx.grades) {
      if (!std::isfinite(g.x1) || !std::isfinite(g.x2)) {
        throw InputError("non-finite grade on simplex " + describe(sx.vertices));
      }
    }
    for (std::size_t i = 0; i < sx.grades.size(); ++i) {
      for (std::size_t j = 0; j < sx.grades.size(); ++j) {
        if (i != j && leq(sx.grades[i], sx.grades[j])) {
          throw InputError("grades of simplex " + describe(sx.vertices) +
                           " are not an antichain");
        }
      }
    }
    if (!index.emplace(sx.vertices, static_cast<int>(s)).second) {
      throw InputError("duplicate simplex " + describe(sx.vertices));
    }
    const int d = sx.dim();
    dims_.push_back(d);
    if (static_cast<int>(by_dim_.size()) <= d) by_dim_.resize(d + 1);
    by_dim_[d].push_back(static_cast<int>(s));
    vertex_data_.insert(vertex_data_.end(), sx.vertices.begin(), sx.vertices.end());
    vertex_offset_.push_back(vertex_data_.size());
    grade_data_.insert(grade_data_.end(), sx.grades.begin(), sx.grades.end());
    grade_offset_.push_back(grade_data_.size());
  }

  std::vector<int> cofacet_count(n, 0);
  std::vector<int> face;
  for (std::size_t s = 0; s < n; ++s) {
    const auto verts = vertices(s);
    if (verts.size() > 1) {
      for (std::size_t drop = 0; drop < verts.size(); ++drop) {
        face.clear();
        for (std::size_t i = 0; i < verts.size(); ++i) {
          if (i != drop) face.push_back(verts[i]);
        }
        auto it = index.find(face);
        if (it == index.end()) {
          throw InputError("complex not closed under faces: " + describe(face) +
                           " missing (face of " + describe(verts) + ")");
        }
        facet_data_.push_back(it->second);
        ++cofacet_count[it->second];
      }
    }
    facet_offset_.push_back(facet_data_.size());
  }

  cofacet_offset_.assign(n + 1, 0);
  for (std::size_t s = 0; s < n; ++s) cofacet_offset_[s + 1] = cofacet_offset_[s] + cofacet_count[s];
  cofacet_data_.assign(cofacet_offset_[n], 0);
  std::vector<std::size_t> fill(cofacet_offset_.begin(), cofacet_offset_.end() - 1);
  for (std::size_t s = 0; s < n; ++s) {
    for (int f : facets(s)) cofacet_data_[fill[f]++] = static_cast<int>(s);
  }
}

std::span<const int> BifilteredComplex::of_dim(int d) const {
  if (d < 0 || d >= static_cast<int>(by_dim_.size())) return {};
  return by_dim_[d];
}

long BifilteredComplex::find(std::span<const int> verts) const {
  if (verts.empty()) return -1;
  const int d = static_cast<int>(verts.size()) - 1;
  // Cofacet walk from the first vertex keeps this independent of the
  // construction-time hash map, which is not retained.
  long current = -1;
  for (int v : of_dim(0)) {
    if (vertices(v)[0] == verts[0]) {
      current = v;
      break;
    }
  }
  if (current < 0) return -1;
  for (int k = 1; k <= d; ++k) {
    long next = -1;
    for (int cf : cofacets(current)) {
      const auto cv = vertices(cf);
      if (std::equal(cv.begin(), cv.end(), verts.begin(), verts.begin() + k + 1)) {
        next = cf;
        break;
      }
    }
    if (next < 0) return -1;
    current = next;
  }
  return current;
}

Simplex BifilteredComplex::simplex(std::size_t s) const {
  const auto v = vertices(s);
  const auto g = grades(s);
  return Simplex{{v.begin(), v.end()}, {g.begin(), g.end()}};
}

std::vector<Simplex> BifilteredComplex::simplices() const {
  std::vector<Simplex> out;
  out.reserve(size());
  for (std::size_t s = 0; s < size(); ++s) out.push_back(simplex(s));
  return out;
}

BifilteredComplex build_function_rips(std::span<const double> distances,
                                      std::span<const double> vertex_values,
                                      double max_scale, int max_dim) {
  const std::size_t n = vertex_values.size();
  if (distances.size() != n * n) {
    throw InputError("distance matrix order does not match vertex_values length");
  }
  if (max_dim < 0) throw InputError("max_dim must be nonnegative");
  if (std::isnan(max_scale)) throw InputError("max_scale is NaN");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(vertex_values[i])) throw InputError("non-finite vertex value");
    if (distances[i * n + i] != 0.0) throw InputError("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < i; ++j) {
      const double d = distances[i * n + j];
      if (std::isnan(d) || d != distances[j * n + i]) {
        throw InputError("distance matrix is not symmetric or contains NaN");
      }
      if (d < 0.0) throw InputError("negative distance");
    }
  }

  std::vector<Simplex> simplices;
  for (std::size_t v = 0; v < n; ++v) {
    simplices.push_back(Simplex{{static_cast<int>(v)}, {{0.0, vertex_values[v]}}});
  }
  if (max_dim >= 1) {
    // Depth-first clique expansion over vertices in increasing order.
    std::vector<int> current;
    std::function<void(double, double)> expand = [&](double diam, double value) {
      const int last = current.back();
      for (std::size_t w = last + 1; w < n; ++w) {
        double d = diam;
        bool ok = true;
        for (int u : current) {
          const double duw = distances[u * n + w];
          if (!(duw <= max_scale)) {
            ok = false;
            break;
          }
          d = std::max(d, duw);
        }
        if (!ok) continue;
        const double val = std::max(value, vertex_values[w]);
        current.push_back(static_cast<int>(w));
        simplices.push_back(Simplex{current, {{d, val}}});
        if (static_cast<int>(current.size()) <= max_dim) expand(d, val);
        current.pop_back();
      }
    };
    for (std::size_t v = 0; v < n; ++v) {
      current.assign(1, static_cast<int>(v));
      expand(0.0, vertex_values[v]);
    }
  }
  // Sort by dimension so faces precede cofaces in the index order.
  std::stable_sort(simplices.begin(), simplices.end(),
                   [](const Simplex& a, const Simplex& b) { return a.dim() < b.dim(); });
  return BifilteredComplex(static_cast<int>(n), std::move(simplices));
}

BifilteredComplex build_closure_bicomplex(std::span<const std::array<int, 3>> triangles,
                                          std::span<const Bigrade> triangle_grades) {
  if (triangles.size() != triangle_grades.size()) {
    throw InputError("one grade per triangle required");
  }
  int n_vertices = 0;
  std::vector<std::array<int, 3>> tris;
  tris.reserve(triangles.size());
  for (const auto& t : triangles) {
    std::array<int, 3> s = t;
    std::sort(s.begin(), s.end());
    if (s[0] < 0 || s[0] == s[1] || s[1] == s[2]) {
      throw InputError("degenerate triangle in triangulation");
    }
    n_vertices = std::max(n_vertices, s[2] + 1);
    tris.push_back(s);
  }
  for (const auto& g : triangle_grades) {
    if (!std::isfinite(g.x1) || !std::isfinite(g.x2)) throw InputError("non-finite triangle grade");
  }

  std::unordered_map<std::vector<int>, std::vector<Bigrade>, VertexKeyHash> grades;
  std::vector<std::vector<int>> order;
  auto add = [&](std::vector<int> key, const Bigrade& g) {
    auto [it, inserted] = grades.try_emplace(key);
    if (inserted) order.push_back(std::move(key));
    it->second.push_back(g);
  };
  std::vector<std::vector<int>> tri_keys;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& s = tris[t];
    const Bigrade& g = triangle_grades[t];
    std::vector<int> key{s[0], s[1], s[2]};
    if (grades.count(key)) throw InputError("duplicate triangle in triangulation");
    add(key, g);
    add({s[0], s[1]}, g);
    add({s[0], s[2]}, g);
    add({s[1], s[2]}, g);
    add({s[0]}, g);
    add({s[1]}, g);
    add({s[2]}, g);
  }
  for (int v = 0; v < n_vertices; ++v) {
    if (!grades.count({v})) {
      throw InputError("vertex " + std::to_string(v) + " belongs to no triangle");
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Simplex> simplices;
  simplices.reserve(order.size());
  for (auto& key : order) {
    auto g = minimal_elements(grades[key]);
    simplices.push_back(Simplex{std::move(key), std::move(g)});
  }
  return BifilteredComplex(n_vertices, std::move(simplices));
}

std::vector<MonotoneViolation> validate_monotone(const BifilteredComplex& c) {
  std::vector<MonotoneViolation> out;
  for (std::size_t s = 0; s < c.size(); ++s) {
    const auto cg = c.grades(s);
    for (int f : c.facets(s)) {
      const auto fg = c.grades(f);
      const bool ok = std::all_of(cg.begin(), cg.end(), [&](const Bigrade& g) {
        return std::any_of(fg.begin(), fg.end(), [&](const Bigrade& h) { return leq(h, g); });
      });
      if (!ok) out.push_back({f, static_cast<int>(s)});
    }
  }
  return out;
}

SliceFiltration push_to_line(const BifilteredComplex& c, const Bigrade& base,
                             const WeightVector& weight) {
  weight.validate();
  if (!std::isfinite(base.x1) || !std::isfinite(base.x2)) throw InputError("non-finite base point");
  SliceFiltration out{std::vector<double>(c.size()), base, weight};
  for (std::size_t s = 0; s < c.size(); ++s) {
    double t = INFINITY;
    for (const Bigrade& g : c.grades(s)) t = std::min(t, line_time(g, base, weight));
    out.times[s] = t;
  }
  return out;
}

void GridFunction::validate() const {
  for (const auto* axis : {&axis1, &axis2}) {
    if (axis->empty()) throw InputError("grid function axis is empty");
    for (std::size_t i = 0; i < axis->size(); ++i) {
      if (!std::isfinite((*axis)[i])) throw InputError("non-finite grid value");
      if (i > 0 && !((*axis)[i - 1] < (*axis)[i])) {
        throw InputError("grid function axis not strictly increasing");
      }
    }
  }
}

double GridFunction::size() const {
  double gap = 0.0;
  for (const auto* axis : {&axis1, &axis2}) {
    for (std::size_t i = 1; i < axis->size(); ++i) gap = std::max(gap, (*axis)[i] - (*axis)[i - 1]);
  }
  return gap;
}

BifilteredComplex snap_to_grid(const BifilteredComplex& c, const GridFunction& grid) {
  grid.validate();
  auto snap = [](const std::vector<double>& axis, double x) {
    auto it = std::lower_bound(axis.begin(), axis.end(), x);
    if (it == axis.end()) throw InputError("grade lies above the grid function's range");
    return *it;
  };
  std::vector<Simplex> out = c.simplices();
  for (Simplex& s : out) {
    for (Bigrade& g : s.grades) g = {snap(grid.axis1, g.x1), snap(grid.axis2, g.x2)};
    s.grades = minimal_elements(std::move(s.grades));
  }
  return BifilteredComplex(c.n_vertices(), std::move(out));
}

BifilteredComplex shift_bigrades(const BifilteredComplex& c, const Bigrade& v) {
  std::vector<Simplex> out = c.simplices();
  for (Simplex& s : out) {
    for (Bigrade& g : s.grades) g = {g.x1 + v.x1, g.x2 + v.x2};
  }
  return BifilteredComplex(c.n_vertices(), std::move(out));
}

}  // namespace mpland
