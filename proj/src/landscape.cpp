#include "mpland/landscape.hpp"

#include <algorithm>
#include <functional>

#include "mpland/error.hpp"

namespace mpland {

double tent(const Bar& bar, double t) {
  const double up = t - bar.birth;
  const double down = bar.death - t;
  return std::max(0.0, std::min(up, down));
}

void top_k_descending(std::vector<double>& values, std::span<double> out) {
  const std::size_t k = std::min(out.size(), values.size());
  std::partial_sort(values.begin(), values.begin() + k, values.end(), std::greater<>());
  std::copy(values.begin(), values.begin() + k, out.begin());
  std::fill(out.begin() + k, out.end(), 0.0);
}

double landscape_eval(const Barcode& barcode, int k, double t) {
  if (k < 1) throw InputError("landscape depth k must be >= 1");
  std::vector<double> tents;
  for (const Bar& b : barcode.bars) {
    const double v = tent(b, t);
    if (v > 0.0) tents.push_back(v);
  }
  if (static_cast<std::size_t>(k) > tents.size()) return 0.0;
  std::nth_element(tents.begin(), tents.begin() + (k - 1), tents.end(), std::greater<>());
  return tents[k - 1];
}

std::vector<std::vector<double>> landscape_profile(const Barcode& barcode, int k_max,
                                                   std::span<const double> ts) {
  if (k_max < 1) throw InputError("k_max must be >= 1");
  std::vector<std::vector<double>> out(k_max, std::vector<double>(ts.size(), 0.0));
  std::vector<double> tents;
  std::vector<double> column(k_max);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    tents.clear();
    for (const Bar& b : barcode.bars) {
      const double v = tent(b, ts[j]);
      if (v > 0.0) tents.push_back(v);
    }
    top_k_descending(tents, column);
    for (int k = 0; k < k_max; ++k) out[k][j] = column[k];
  }
  return out;
}

}  // namespace mpland
