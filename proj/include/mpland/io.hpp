#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpland/bifiltration.hpp"
#include "mpland/multiland.hpp"
#include "mpland/persistence.hpp"
#include "mpland/rect_oracle.hpp"

namespace mpland::io {

namespace fs = std::filesystem;

/// "%.17g", with inf/-inf/nan spelled out.
std::string format_double(double v);

/// Strict real parse of a whole token ("inf" accepted).
double parse_double(const std::string& token, const std::string& where);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t h);
std::string read_file(const fs::path& path);
/// FNV-1a of the file contents, hex encoded.
std::string file_hash(const fs::path& path);
/// Writes bytes to path, creating parent directories.
void write_file(const fs::path& path, const std::string& bytes);

// Bifiltered complex text: "v0 v1 ... vk ; a1 a2 [; a1' a2' ...]" per line,
// '#' starts a comment. Vertices are numbered from 0.
BifilteredComplex parse_complex(std::istream& in, const std::string& name);
BifilteredComplex read_complex(const fs::path& path);
std::string format_complex(const BifilteredComplex& c);

/// Point cloud CSV: header row, coordinate columns and an optional final
/// column named "f" holding vertex values.
struct PointCloud {
  int n = 0;
  int dim = 0;
  std::vector<double> coords;  // row-major n x dim
  std::vector<double> values;  // empty unless an f column is present
};
PointCloud read_point_cloud(const fs::path& path);
std::string format_point_cloud(const PointCloud& cloud);

/// Lower-triangular distance matrix: line i lists d(i, 0..i-1). Returns the
/// full row-major n x n matrix.
std::vector<double> read_distance_matrix(const fs::path& path, int& n);
std::string format_distance_matrix(const std::vector<double>& d, int n);

/// One real per line; blank lines and '#' comments skipped.
std::vector<double> read_values(const fs::path& path);
std::string format_values(const std::vector<double>& values);

/// CSV "dim,birth,death" with "inf" for essential classes.
std::string format_barcode(const Barcode& barcode);

/// One "a1 a2 b1 b2" line per rectangle.
RectangleBarcode read_rects(const fs::path& path);
std::string format_rects(const RectangleBarcode& rects);

/// Grid export: <dir>/grid.json plus <dir>/landscape_k<k>.csv per k, rows
/// from the largest x2 down, columns x1 ascending. With pgm set, also
/// <dir>/landscape_k<k>.pgm. Returns the written paths.
std::vector<fs::path> write_grid(const LandscapeGrid& grid, const fs::path& dir, bool pgm);
/// Reads a grid from its directory or its grid.json path.
LandscapeGrid read_grid(const fs::path& path);
std::string format_grid_csv(const LandscapeGrid& grid, int k);
std::string format_grid_pgm(const LandscapeGrid& grid, int k);
/// Hash of the grid metadata (region, resolution, k_max, weight, dimension).
std::string grid_metadata_hash(const LandscapeGrid& grid);

/// Feature matrix: a "# grid <hash> k_max n2 n1" header, a column header, then
/// one row "label,v0,v1,..." per grid in vectorize order.
std::string format_features(const std::vector<LandscapeGrid>& grids,
                            const std::vector<std::string>& labels);

}  // namespace mpland::io
