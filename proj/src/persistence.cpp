#include "mpland/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>

#include "mpland/error.hpp"

namespace mpland {

bool Bar::essential() const { return std::isinf(death); }

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int root(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

// Position of every simplex of dimension d within the (time, index) order of
// that dimension. Cross-dimension ordering is never needed by the reductions
// below because every comparison is between simplices of equal dimension.
struct DimOrder {
  std::vector<int> order;  // position -> simplex index
};

DimOrder sort_dim(const BifilteredComplex& c, std::span<const double> times, int d) {
  const auto ids = c.of_dim(d);
  DimOrder out{{ids.begin(), ids.end()}};
  std::sort(out.order.begin(), out.order.end(), [&](int a, int b) {
    return times[a] != times[b] ? times[a] < times[b] : a < b;
  });
  return out;
}

void check_monotone_times(const BifilteredComplex& c, std::span<const double> times, int top_dim) {
  for (int d = 1; d <= top_dim; ++d) {
    for (int s : c.of_dim(d)) {
      for (int f : c.facets(s)) {
        if (times[f] > times[s]) {
          throw InputError("face enters after coface in slice filtration (simplex " +
                           std::to_string(s) + ", face " + std::to_string(f) + ")");
        }
      }
    }
  }
}

}  // namespace

std::vector<PersistencePair> persistence_pairs(const BifilteredComplex& c,
                                               std::span<const double> times,
                                               int hom_dim) {
  if (hom_dim < 0) throw InputError("homology dimension must be nonnegative");
  if (times.size() != c.size()) throw InputError("slice filtration does not match complex");
  std::vector<PersistencePair> pairs;
  if (c.of_dim(hom_dim).empty()) return pairs;
  check_monotone_times(c, times, std::min(hom_dim + 1, c.max_dim()));

  // Dimension 0: elder-rule union-find over edges.
  const DimOrder vertices = sort_dim(c, times, 0);
  std::vector<int> vertex_pos(c.size(), -1);
  for (std::size_t p = 0; p < vertices.order.size(); ++p) vertex_pos[vertices.order[p]] = static_cast<int>(p);
  // cleared[s] marks simplices of the current dimension that are the death
  // simplex of a pair one dimension below.
  std::vector<char> cleared(c.size(), 0);
  {
    const DimOrder edges = sort_dim(c, times, 1);
    UnionFind uf(vertices.order.size());
    for (int e : edges.order) {
      const auto f = c.facets(e);
      int ru = uf.root(vertex_pos[f[0]]);
      int rv = uf.root(vertex_pos[f[1]]);
      if (ru == rv) continue;
      // Roots are the oldest vertex of each component (smallest position).
      if (ru > rv) std::swap(ru, rv);
      uf.parent[rv] = ru;
      cleared[e] = 1;
      if (hom_dim == 0) pairs.push_back({vertices.order[rv], e});
    }
    if (hom_dim == 0) {
      for (std::size_t p = 0; p < vertices.order.size(); ++p) {
        if (uf.root(static_cast<int>(p)) == static_cast<int>(p)) pairs.push_back({vertices.order[p], -1});
      }
      return pairs;
    }
  }

  std::vector<int> column;
  std::vector<int> scratch;
  for (int d = 1; d <= hom_dim; ++d) {
    const DimOrder rows = sort_dim(c, times, d);
    const DimOrder cofaces = sort_dim(c, times, d + 1);
    std::vector<int> coface_pos(c.size(), -1);
    for (std::size_t p = 0; p < cofaces.order.size(); ++p) coface_pos[cofaces.order[p]] = static_cast<int>(p);

    // pivot_owner[p]: index into `reduced` of the column whose pivot is the
    // coface at position p.
    std::vector<int> pivot_owner(cofaces.order.size(), -1);
    std::vector<std::vector<int>> reduced;
    std::vector<char> next_cleared(c.size(), 0);

    for (auto it = rows.order.rbegin(); it != rows.order.rend(); ++it) {
      const int s = *it;
      if (cleared[s]) continue;
      column.clear();
      for (int cf : c.cofacets(s)) column.push_back(coface_pos[cf]);
      std::sort(column.begin(), column.end());
      while (!column.empty() && pivot_owner[column.front()] >= 0) {
        const auto& other = reduced[pivot_owner[column.front()]];
        scratch.clear();
        std::set_symmetric_difference(column.begin(), column.end(), other.begin(), other.end(),
                                      std::back_inserter(scratch));
        column.swap(scratch);
      }
      if (column.empty()) {
        if (d == hom_dim) pairs.push_back({s, -1});
        continue;
      }
      const int pivot = column.front();
      pivot_owner[pivot] = static_cast<int>(reduced.size());
      reduced.push_back(column);
      const int death = cofaces.order[pivot];
      next_cleared[death] = 1;
      if (d == hom_dim) pairs.push_back({s, death});
    }
    cleared.swap(next_cleared);
  }
  return pairs;
}

Barcode compute_barcode(const BifilteredComplex& c, const SliceFiltration& f, int hom_dim) {
  Barcode out;
  out.dim = hom_dim;
  out.base = f.base;
  out.weight = f.weight;
  for (const PersistencePair& p : persistence_pairs(c, f.times, hom_dim)) {
    const double birth = f.times[p.birth];
    const double death = p.death < 0 ? INFINITY : f.times[p.death];
    if (birth < death) out.bars.push_back({birth, death, hom_dim});
  }
  std::sort(out.bars.begin(), out.bars.end(), [](const Bar& a, const Bar& b) {
    return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
  });
  return out;
}

namespace {

// Dense GF(2) vector; enough for the oracle's small complexes.
class Gf2Vector {
 public:
  explicit Gf2Vector(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  void add(const Gf2Vector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  }
  // Index of the highest set bit, or -1.
  long top() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w]) return static_cast<long>(w * 64 + 63 - __builtin_clzll(words_[w]));
    }
    return -1;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Row-echelon basis keyed by top bit; insert() returns whether the vector was
// independent of the current span.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t n) : by_top_(n) {}
  bool insert(Gf2Vector v) {
    for (long t = v.top(); t >= 0; t = v.top()) {
      if (!by_top_[t]) {
        by_top_[t] = std::make_unique<Gf2Vector>(std::move(v));
        ++rank_;
        return true;
      }
      v.add(*by_top_[t]);
    }
    return false;
  }
  int rank() const { return rank_; }

 private:
  std::vector<std::unique_ptr<Gf2Vector>> by_top_;
  int rank_ = 0;
};

bool present_at(const BifilteredComplex& c, int s, const Bigrade& p) {
  for (const Bigrade& g : c.grades(s)) {
    if (leq(g, p)) return true;
  }
  return false;
}

}  // namespace

int brute_force_rank(const BifilteredComplex& c, const Bigrade& a, const Bigrade& b, int hom_dim) {
  if (!leq(a, b)) throw InputError("brute_force_rank requires a <= b");
  if (hom_dim < 0) throw InputError("homology dimension must be nonnegative");

  // Coordinates: d-simplices of X_b. X_a is a subcomplex of X_b.
  std::vector<int> chain_index(c.size(), -1);
  std::vector<int> chains_b;
  for (int s : c.of_dim(hom_dim)) {
    if (present_at(c, s, b)) {
      chain_index[s] = static_cast<int>(chains_b.size());
      chains_b.push_back(s);
    }
  }
  const std::size_t m = chains_b.size();
  if (m == 0) return 0;

  std::vector<int> face_index(c.size(), -1);
  std::size_t n_faces = 0;
  for (int s : c.of_dim(hom_dim - 1)) face_index[s] = static_cast<int>(n_faces++);

  // Kernel of the boundary map restricted to chains of X_a: eliminate on
  // boundary vectors while tracking the chain that produced each one.
  std::vector<Gf2Vector> kernel;
  {
    struct Row {
      Gf2Vector boundary;
      Gf2Vector chain;
    };
    std::vector<std::unique_ptr<Row>> by_top(std::max<std::size_t>(n_faces, 1));
    for (int s : chains_b) {
      if (!present_at(c, s, a)) continue;
      Row r{Gf2Vector(n_faces), Gf2Vector(m)};
      r.chain.flip(chain_index[s]);
      if (hom_dim > 0) {
        for (int f : c.facets(s)) r.boundary.flip(face_index[f]);
      }
      bool zero = true;
      for (long t = r.boundary.top(); t >= 0; t = r.boundary.top()) {
        if (!by_top[t]) {
          by_top[t] = std::make_unique<Row>(std::move(r));
          zero = false;
          break;
        }
        r.boundary.add(by_top[t]->boundary);
        r.chain.add(by_top[t]->chain);
      }
      if (zero) kernel.push_back(std::move(r.chain));
    }
  }

  Gf2Basis boundaries(m);
  for (int s : c.of_dim(hom_dim + 1)) {
    if (!present_at(c, s, b)) continue;
    Gf2Vector v(m);
    for (int f : c.facets(s)) {
      if (chain_index[f] < 0) throw InputError("complex is not monotone along faces");
      v.flip(chain_index[f]);
    }
    boundaries.insert(std::move(v));
  }
  const int rank_b = boundaries.rank();
  for (auto& z : kernel) boundaries.insert(std::move(z));
  return boundaries.rank() - rank_b;
}

}  // namespace mpland
