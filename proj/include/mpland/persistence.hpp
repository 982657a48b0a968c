#pragma once

#include <span>
#include <vector>

#include "mpland/bifiltration.hpp"

namespace mpland {

/// Half-open persistence interval [birth, death); death may be +infinity.
struct Bar {
  double birth = 0.0;
  double death = 0.0;
  int dim = 0;

  bool essential() const;
  friend bool operator==(const Bar&, const Bar&) = default;
};

struct Barcode {
  std::vector<Bar> bars;
  int dim = 0;
  Bigrade base;
  WeightVector weight;
};

/// Birth/death simplex indices of one persistence pair; death < 0 marks an
/// essential class.
struct PersistencePair {
  int birth = -1;
  int death = -1;
};

/// GF(2) persistence pairs of dimension hom_dim for the sublevel filtration
/// given by per-simplex entry times. Simplices are ordered by
/// (time, dimension, index). Pairs of zero persistence are included.
///
/// Dimension 0 uses union-find; higher dimensions use cohomology column
/// reduction with clearing from the dimension below.
std::vector<PersistencePair> persistence_pairs(const BifilteredComplex& c,
                                               std::span<const double> times,
                                               int hom_dim);

/// Barcode of a pushed slice, zero-length bars removed, sorted by
/// (birth, death).
Barcode compute_barcode(const BifilteredComplex& c, const SliceFiltration& f,
                        int hom_dim);

/// Rank of H_d(X_a) -> H_d(X_b) computed by direct GF(2) elimination on cycle
/// and boundary spaces. Independent of the barcode machinery; intended as an
/// oracle on small complexes.
int brute_force_rank(const BifilteredComplex& c, const Bigrade& a,
                     const Bigrade& b, int hom_dim);

}  // namespace mpland
