#include "mpland/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mpland/error.hpp"

namespace mpland::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  return trim(line.substr(0, line.find('#')));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string where(const std::string& name, std::size_t line) {
  return name + ":" + std::to_string(line);
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& token, const std::string& where) {
  if (token == "inf" || token == "+inf") return INFINITY;
  if (token == "-inf") return -INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InputError(where + ": expected a number, got '" + token + "'");
  }
  if (used != token.size() || std::isnan(v)) {
    throw InputError(where + ": expected a number, got '" + token + "'");
  }
  return v;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const fs::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string file_hash(const fs::path& path) { return hash_hex(fnv1a64(read_file(path))); }

void write_file(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << bytes;
  if (!out) throw InputError("failed writing " + path.string());
}

BifilteredComplex parse_complex(std::istream& in, const std::string& name) {
  std::vector<Simplex> simplices;
  int n_vertices = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    const std::string at = where(name, line_no);
    const auto parts = split_on(line, ';');
    if (parts.size() < 2) throw InputError(at + ": expected 'vertices ; grade'");
    Simplex s;
    for (const auto& tok : split_ws(parts[0])) {
      const double v = parse_double(tok, at);
      if (v < 0 || v != std::floor(v) || v > 1e9) throw InputError(at + ": bad vertex '" + tok + "'");
      s.vertices.push_back(static_cast<int>(v));
    }
    if (s.vertices.empty()) throw InputError(at + ": simplex without vertices");
    for (std::size_t p = 1; p < parts.size(); ++p) {
      const auto toks = split_ws(parts[p]);
      if (toks.size() != 2) throw InputError(at + ": a grade needs exactly two coordinates");
      s.grades.push_back({parse_double(toks[0], at), parse_double(toks[1], at)});
    }
    for (int v : s.vertices) n_vertices = std::max(n_vertices, v + 1);
    simplices.push_back(std::move(s));
  }
  try {
    return BifilteredComplex(n_vertices, std::move(simplices));
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
}

BifilteredComplex read_complex(const fs::path& path) {
  auto in = open_in(path);
  return parse_complex(in, path.string());
}

std::string format_complex(const BifilteredComplex& c) {
  std::string out;
  for (std::size_t s = 0; s < c.size(); ++s) {
    const auto vs = c.vertices(s);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(vs[i]);
    }
    for (const Bigrade& g : c.grades(s)) {
      out += " ; " + format_double(g.x1) + ' ' + format_double(g.x2);
    }
    out += '\n';
  }
  return out;
}

PointCloud read_point_cloud(const fs::path& path) {
  auto in = open_in(path);
  const std::string name = path.string();
  PointCloud cloud;
  std::string raw;
  std::size_t line_no = 0;
  bool header = false;
  bool has_f = false;
  std::size_t columns = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_on(line, ',');
    if (!header) {
      header = true;
      columns = cells.size();
      has_f = cells.back() == "f";
      cloud.dim = static_cast<int>(columns) - (has_f ? 1 : 0);
      if (cloud.dim < 1) throw InputError(where(name, line_no) + ": no coordinate columns");
      continue;
    }
    if (cells.size() != columns) {
      throw InputError(where(name, line_no) + ": expected " + std::to_string(columns) + " columns");
    }
    for (std::size_t c = 0; c < columns; ++c) {
      const double v = parse_double(cells[c], where(name, line_no));
      if (!std::isfinite(v)) throw InputError(where(name, line_no) + ": non-finite value");
      if (has_f && c + 1 == columns) {
        cloud.values.push_back(v);
      } else {
        cloud.coords.push_back(v);
      }
    }
    ++cloud.n;
  }
  if (!header) throw InputError(name + ": missing header");
  return cloud;
}

std::string format_point_cloud(const PointCloud& cloud) {
  std::string out;
  for (int c = 0; c < cloud.dim; ++c) out += (c ? ",x" : "x") + std::to_string(c);
  if (!cloud.values.empty()) out += ",f";
  out += '\n';
  for (int i = 0; i < cloud.n; ++i) {
    for (int c = 0; c < cloud.dim; ++c) {
      if (c) out += ',';
      out += format_double(cloud.coords[static_cast<std::size_t>(i) * cloud.dim + c]);
    }
    if (!cloud.values.empty()) out += ',' + format_double(cloud.values[i]);
    out += '\n';
  }
  return out;
}

std::vector<double> read_distance_matrix(const fs::path& path, int& n) {
  auto in = open_in(path);
  const std::string name = path.string();
  std::vector<std::vector<double>> rows;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!trim(raw).empty() && trim(raw)[0] == '#') continue;
    // Row 0 has no entries, so the first blank line is that row.
    const auto toks = split_ws(strip_comment(raw));
    if (toks.empty() && !rows.empty()) continue;
    if (toks.size() != rows.size()) {
      throw InputError(where(name, line_no) + ": row " + std::to_string(rows.size()) +
                       " must list " + std::to_string(rows.size()) + " distances");
    }
    std::vector<double> row;
    for (const auto& t : toks) {
      const double v = parse_double(t, where(name, line_no));
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InputError(where(name, line_no) + ": distances must be finite and nonnegative");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  n = static_cast<int>(rows.size());
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      d[static_cast<std::size_t>(i) * n + j] = rows[i][j];
      d[static_cast<std::size_t>(j) * n + i] = rows[i][j];
    }
  }
  return d;
}

std::string format_distance_matrix(const std::vector<double>& d, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (j) out += ' ';
      out += format_double(d[static_cast<std::size_t>(i) * n + j]);
    }
    out += '\n';
  }
  return out;
}

std::vector<double> read_values(const fs::path& path) {
  auto in = open_in(path);
  const std::string name = path.string();
  std::vector<double> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    const auto toks = split_ws(line);
    if (toks.size() != 1) throw InputError(where(name, line_no) + ": expected one value per line");
    const double v = parse_double(toks[0], where(name, line_no));
    if (!std::isfinite(v)) throw InputError(where(name, line_no) + ": non-finite value");
    out.push_back(v);
  }
  return out;
}

std::string format_values(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += format_double(v) + '\n';
  return out;
}

std::string format_barcode(const Barcode& barcode) {
  std::string out = "dim,birth,death\n";
  for (const Bar& b : barcode.bars) {
    out += std::to_string(b.dim) + ',' + format_double(b.birth) + ',' + format_double(b.death) + '\n';
  }
  return out;
}

RectangleBarcode read_rects(const fs::path& path) {
  auto in = open_in(path);
  const std::string name = path.string();
  RectangleBarcode out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    const auto toks = split_ws(line);
    if (toks.size() != 4) throw InputError(where(name, line_no) + ": expected 'a1 a2 b1 b2'");
    const std::string at = where(name, line_no);
    Rect r{{parse_double(toks[0], at), parse_double(toks[1], at)},
           {parse_double(toks[2], at), parse_double(toks[3], at)}};
    try {
      r.validate();
    } catch (const InputError& e) {
      throw InputError(at + ": " + e.what());
    }
    out.push_back(r);
  }
  return out;
}

std::string format_rects(const RectangleBarcode& rects) {
  std::string out;
  for (const Rect& r : rects) {
    out += format_double(r.lower.x1) + ' ' + format_double(r.lower.x2) + ' ' +
           format_double(r.upper.x1) + ' ' + format_double(r.upper.x2) + '\n';
  }
  return out;
}

namespace {

std::string csv_name(int k) { return "landscape_k" + std::to_string(k) + ".csv"; }
std::string pgm_name(int k) { return "landscape_k" + std::to_string(k) + ".pgm"; }

nlohmann::ordered_json grid_metadata(const LandscapeGrid& g) {
  nlohmann::ordered_json j;
  j["region"] = {{"x1_min", g.region().x1_min},
                 {"x1_max", g.region().x1_max},
                 {"x2_min", g.region().x2_min},
                 {"x2_max", g.region().x2_max}};
  j["resolution"] = g.resolution();
  j["k_max"] = g.k_max();
  j["weight"] = {g.weight().w1, g.weight().w2};
  j["hom_dim"] = g.hom_dim();
  return j;
}

}  // namespace

std::string format_grid_csv(const LandscapeGrid& grid, int k) {
  std::string out;
  for (int j = grid.n2() - 1; j >= 0; --j) {
    for (int i = 0; i < grid.n1(); ++i) {
      if (i) out += ',';
      out += format_double(grid.at(k, j, i));
    }
    out += '\n';
  }
  return out;
}

std::string format_grid_pgm(const LandscapeGrid& grid, int k) {
  double vmax = 0.0;
  for (double v : grid.values()) vmax = std::max(vmax, v);
  std::string out = "P2\n" + std::to_string(grid.n1()) + ' ' + std::to_string(grid.n2()) + "\n255\n";
  for (int j = grid.n2() - 1; j >= 0; --j) {
    for (int i = 0; i < grid.n1(); ++i) {
      const long p = vmax > 0.0 ? std::lround(255.0 * grid.at(k, j, i) / vmax) : 0;
      if (i) out += ' ';
      out += std::to_string(p);
    }
    out += '\n';
  }
  return out;
}

std::string grid_metadata_hash(const LandscapeGrid& grid) {
  return hash_hex(fnv1a64(grid_metadata(grid).dump()));
}

std::vector<fs::path> write_grid(const LandscapeGrid& grid, const fs::path& dir, bool pgm) {
  std::vector<fs::path> written;
  nlohmann::ordered_json j = grid_metadata(grid);
  std::vector<double> x1s, x2s;
  for (int i = 0; i < grid.n1(); ++i) x1s.push_back(grid.x1(i));
  for (int i = 0; i < grid.n2(); ++i) x2s.push_back(grid.x2(i));
  j["x1"] = x1s;
  j["x2"] = x2s;
  std::vector<std::string> files;
  for (int k = 1; k <= grid.k_max(); ++k) {
    files.push_back(csv_name(k));
    write_file(dir / csv_name(k), format_grid_csv(grid, k));
    written.push_back(dir / csv_name(k));
    if (pgm) {
      write_file(dir / pgm_name(k), format_grid_pgm(grid, k));
      written.push_back(dir / pgm_name(k));
    }
  }
  j["files"] = files;
  write_file(dir / "grid.json", j.dump(2) + "\n");
  written.insert(written.begin(), dir / "grid.json");
  return written;
}

LandscapeGrid read_grid(const fs::path& path) {
  const fs::path json_path = fs::is_directory(path) ? path / "grid.json" : path;
  const fs::path dir = json_path.parent_path();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(json_path));
    const auto& r = j.at("region");
    Region region{r.at("x1_min").get<double>(), r.at("x1_max").get<double>(),
                  r.at("x2_min").get<double>(), r.at("x2_max").get<double>()};
    WeightVector w{j.at("weight").at(0).get<double>(), j.at("weight").at(1).get<double>()};
    LandscapeGrid grid(region, j.at("resolution").get<double>(), j.at("k_max").get<int>(), w,
                       j.at("hom_dim").get<int>());
    const auto files = j.at("files").get<std::vector<std::string>>();
    if (static_cast<int>(files.size()) != grid.k_max()) {
      throw InputError(json_path.string() + ": expected one file per k");
    }
    for (int k = 1; k <= grid.k_max(); ++k) {
      const fs::path csv = dir / files[k - 1];
      auto in = open_in(csv);
      std::string raw;
      std::size_t line_no = 0;
      int row = 0;
      while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (row >= grid.n2()) throw InputError(where(csv.string(), line_no) + ": too many rows");
        const auto cells = split_on(line, ',');
        if (static_cast<int>(cells.size()) != grid.n1()) {
          throw InputError(where(csv.string(), line_no) + ": expected " +
                           std::to_string(grid.n1()) + " columns");
        }
        const int jj = grid.n2() - 1 - row;
        for (int i = 0; i < grid.n1(); ++i) {
          grid.at(k, jj, i) = parse_double(cells[i], where(csv.string(), line_no));
        }
        ++row;
      }
      if (row != grid.n2()) throw InputError(csv.string() + ": expected " + std::to_string(grid.n2()) + " rows");
    }
    return grid;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(json_path.string() + ": " + e.what());
  }
}

std::string format_features(const std::vector<LandscapeGrid>& grids,
                            const std::vector<std::string>& labels) {
  if (grids.empty()) throw InputError("no grids to vectorize");
  if (labels.size() != grids.size()) throw InputError("one label per grid required");
  const LandscapeGrid& g0 = grids.front();
  for (const auto& g : grids) {
    if (!g.same_layout(g0)) throw InputError("grids have mismatched metadata");
  }
  std::string out = "# grid " + grid_metadata_hash(g0) + " k_max=" + std::to_string(g0.k_max()) +
                    " n2=" + std::to_string(g0.n2()) + " n1=" + std::to_string(g0.n1()) + "\n";
  out += "label";
  for (int k = 1; k <= g0.k_max(); ++k) {
    for (int j = 0; j < g0.n2(); ++j) {
      for (int i = 0; i < g0.n1(); ++i) {
        out += ",k" + std::to_string(k) + "_j" + std::to_string(j) + "_i" + std::to_string(i);
      }
    }
  }
  out += '\n';
  for (std::size_t s = 0; s < grids.size(); ++s) {
    out += labels[s];
    for (double v : grids[s].values()) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

}  // namespace mpland::io
