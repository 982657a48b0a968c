#include "mpland/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mpland/error.hpp"
#include "mpland/random.hpp"

namespace mpland {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

std::vector<double> euclidean_distances(std::span<const double> points, int d) {
  const std::size_t n = points.size() / d;
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = points[i * d + c] - points[j * d + c];
        s += diff * diff;
      }
      out[i * n + j] = out[j * n + i] = std::sqrt(s);
    }
  }
  return out;
}

SampleSet gen_circles(int n_per_circle, Colouring colouring, double noise_sigma,
                      std::uint64_t seed) {
  if (n_per_circle < 1) throw InputError("gen_circles needs at least one point per circle");
  if (!(noise_sigma >= 0.0)) throw InputError("noise sigma must be nonnegative");
  Rng rng(seed, 0);
  SampleSet s;
  s.kind = SampleKind::circles;
  s.n = 2 * n_per_circle;
  s.point_dim = 2;
  s.seed = seed;
  s.label = std::string("circles-") + to_string(colouring);
  const double small_colour = colouring == Colouring::A ? 1.5 : 0.5;
  const double large_colour = colouring == Colouring::A ? 0.5 : 1.5;
  for (int c = 0; c < 2; ++c) {
    const double radius = c == 0 ? 1.0 : 3.0;
    const double colour = c == 0 ? small_colour : large_colour;
    for (int p = 0; p < n_per_circle; ++p) {
      const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      double r = radius;
      double f = colour;
      if (noise_sigma > 0.0) {
        r += rng.normal(0.0, noise_sigma);
        f += rng.normal(0.0, noise_sigma);
      }
      s.points.push_back(r * std::cos(theta));
      s.points.push_back(r * std::sin(theta));
      s.vertex_values.push_back(f);
    }
  }
  s.distances = euclidean_distances(s.points, 2);
  return s;
}

double disc_distance(DiscSpace space, double r1, double theta1, double r2, double theta2) {
  const double c = std::cos(theta1 - theta2);
  switch (space) {
    case DiscSpace::hyperbolic: {
      const double v = std::cosh(r1) * std::cosh(r2) - std::sinh(r1) * std::sinh(r2) * c;
      return std::acosh(std::max(1.0, v));
    }
    case DiscSpace::euclidean:
      return std::sqrt(std::max(0.0, r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * c));
    case DiscSpace::elliptic: {
      const double v = std::cos(r1) * std::cos(r2) + std::sin(r1) * std::sin(r2) * c;
      return std::acos(std::clamp(v, -1.0, 1.0));
    }
  }
  return 0.0;
}

SampleSet gen_disc(DiscSpace space, int n, std::uint64_t seed) {
  if (n < 1) throw InputError("gen_disc needs at least one point");
  Rng rng(seed, 0);
  std::vector<double> r(n), theta(n);
  for (int i = 0; i < n; ++i) {
    theta[i] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double u = rng.uniform();
    switch (space) {
      case DiscSpace::hyperbolic:
        r[i] = std::acosh(1.0 + u * (std::cosh(1.0) - 1.0));
        break;
      case DiscSpace::euclidean:
        r[i] = std::sqrt(u);
        break;
      case DiscSpace::elliptic:
        r[i] = std::acos(1.0 - u * (1.0 - std::cos(1.0)));
        break;
    }
  }
  SampleSet s;
  s.kind = SampleKind::disc;
  s.n = n;
  s.seed = seed;
  s.label = std::string("disc-") + to_string(space);
  s.distances.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = disc_distance(space, r[i], theta[i], r[j], theta[j]);
      s.distances[static_cast<std::size_t>(i) * n + j] = d;
      s.distances[static_cast<std::size_t>(j) * n + i] = d;
    }
  }
  return s;
}

std::vector<double> knn_codensity(std::span<const double> distances, int n, int k) {
  if (k < 1 || k >= n) throw InputError("codensity needs 1 <= k < n");
  if (distances.size() != static_cast<std::size_t>(n) * n) {
    throw InputError("distance matrix has the wrong size");
  }
  std::vector<double> out(n);
  std::vector<double> row;
  for (int i = 0; i < n; ++i) {
    row.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) row.push_back(distances[static_cast<std::size_t>(i) * n + j]);
    }
    std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
    out[i] = row[k - 1];
  }
  return out;
}

std::vector<double> gaussian_kde(std::span<const double> data, double sigma,
                                 std::span<const double> xs) {
  if (data.empty()) throw InputError("kernel density estimate of empty data");
  if (!(sigma > 0.0)) throw InputError("bandwidth must be positive");
  const double norm = 1.0 / (static_cast<double>(data.size()) * sigma *
                             std::sqrt(2.0 * std::numbers::pi));
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    double s = 0.0;
    for (double d : data) {
      const double z = (x - d) / sigma;
      s += std::exp(-0.5 * z * z);
    }
    out.push_back(s * norm);
  }
  return out;
}

BifilteredComplex KdeSurface::complex() const {
  return build_closure_bicomplex(triangles, grades);
}

KdeSurface gen_kde_surface(std::span<const double> data, std::span<const double> sigmas,
                           std::span<const double> xs) {
  if (sigmas.size() < 2 || xs.size() < 2) throw InputError("KDE surface needs two nodes per axis");
  auto increasing = [](std::span<const double> v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i] > v[i - 1])) return false;
    }
    return true;
  };
  if (!increasing(sigmas) || !increasing(xs)) throw InputError("KDE surface axes must increase");
  KdeSurface s;
  s.nx = static_cast<int>(xs.size());
  s.nsigma = static_cast<int>(sigmas.size());
  for (double sigma : sigmas) {
    const auto row = gaussian_kde(data, sigma, xs);
    s.density.insert(s.density.end(), row.begin(), row.end());
  }
  const int nx = s.nx;
  auto vid = [nx](int i, int j) { return j * nx + i; };
  auto add = [&](std::array<int, 3> t) {
    double sig = 0.0, dens = 0.0;
    for (int v : t) {
      sig += sigmas[v / nx];
      dens += s.density[v];
    }
    std::sort(t.begin(), t.end());
    s.triangles.push_back(t);
    s.grades.push_back({sig / 3.0, 1.0 - dens / 3.0});
  };
  for (int j = 0; j + 1 < s.nsigma; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      add({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      add({vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)});
    }
  }
  return s;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw InputError("linspace needs at least two values");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  out.back() = hi;
  return out;
}

const char* to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::circles: return "circles";
    case SampleKind::disc: return "disc";
    case SampleKind::kde: return "kde";
  }
  return "?";
}

const char* to_string(Colouring colouring) { return colouring == Colouring::A ? "A" : "B"; }

const char* to_string(DiscSpace space) {
  switch (space) {
    case DiscSpace::hyperbolic: return "hyperbolic";
    case DiscSpace::euclidean: return "euclidean";
    case DiscSpace::elliptic: return "elliptic";
  }
  return "?";
}

}  // namespace mpland
