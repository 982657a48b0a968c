#pragma once

#include <span>
#include <vector>

#include "mpland/persistence.hpp"

namespace mpland {

/// Tent function of a single bar: max(0, min(t - birth, death - t)).
double tent(const Bar& bar, double t);

/// k-th largest tent value at t (k >= 1); 0 when fewer than k bars are
/// positive there.
double landscape_eval(const Barcode& barcode, int k, double t);

/// Same as landscape_eval over several k and t. Row k-1 holds lambda_k.
std::vector<std::vector<double>> landscape_profile(const Barcode& barcode, int k_max,
                                                   std::span<const double> ts);

/// Writes the k_max largest values of `values` (descending, zero padded) into
/// `out`. Reorders `values`.
void top_k_descending(std::vector<double>& values, std::span<double> out);

}  // namespace mpland
