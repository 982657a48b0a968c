// Runs the command-line tool and compares its files with library results.
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <json.hpp>

#include "mpland/datagen.hpp"
#include "mpland/io.hpp"
#include "mpland/multiland.hpp"
#include "mpland/stats.hpp"

using namespace mpland;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("mpland_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const std::string cmd = "cd '" + work_dir().string() + "' && '" MPLAND_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int st = ::pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path at(const std::string& rel) { return work_dir() / rel; }

nlohmann::json manifest(const std::string& dir) {
  return nlohmann::json::parse(io::read_file(at(dir) / "manifest.json"));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen circles matches the generator") {
  REQUIRE(run("gen circles --n 8 --colouring B --noise 0.2 --seed 5 --out circ").status == 0);
  const auto s = gen_circles(8, Colouring::B, 0.2, 5);
  io::PointCloud p{s.n, 2, s.points, s.vertex_values};
  CHECK(io::read_file(at("circ/points.csv")) == io::format_point_cloud(p));
  const auto m = manifest("circ");
  CHECK(m["tool"] == "mpland");
  CHECK(m["command"] == "gen circles");
  CHECK(m["seed"] == 5);
  CHECK(m["parameters"]["colouring"] == "B");
  CHECK(m["outputs"] == nlohmann::json::array({"points.csv"}));
}

TEST_CASE("rips and landscape match the library bit for bit") {
  REQUIRE(run("gen circles --n 6 --seed 2 --out pts").status == 0);
  REQUIRE(run("rips --points pts/points.csv --max-dim 2 --out cx").status == 0);
  const auto cloud = io::read_point_cloud(at("pts/points.csv"));
  const auto c = build_function_rips(euclidean_distances(cloud.coords, cloud.dim), cloud.values,
                                     INFINITY, 2);
  CHECK(io::read_file(at("cx/complex.txt")) == io::format_complex(c));

  REQUIRE(run("landscape cx/complex.txt --region 0,6,0,2 --resolution 0.25 --kmax 3 --dim 1 "
              "--weight 1,0.5 --pgm --threads 2 --out land")
              .status == 0);
  const auto g = compute_landscape_grid(c, {0, 6, 0, 2}, 0.25, 3, {1.0, 0.5}, 1);
  const auto h = io::read_grid(at("land"));
  REQUIRE(h.same_layout(g));
  CHECK(std::equal(h.values().begin(), h.values().end(), g.values().begin()));
  CHECK(io::read_file(at("land/landscape_k2.csv")) == io::format_grid_csv(g, 2));
  CHECK(io::read_file(at("land/landscape_k1.pgm")) == io::format_grid_pgm(g, 1));
  const auto m = manifest("land");
  CHECK(m["seed"].is_null());
  CHECK(m["inputs"]["cx/complex.txt"] == io::file_hash(at("cx/complex.txt")));
  CHECK(m["parameters"].contains("threads") == false);
  CHECK(m["outputs"].size() == 1 + 3 + 3);

  const auto d = run("distance land land --q 2 --out dist");
  CHECK(d.status == 0);
  CHECK(d.out.find('0') != std::string::npos);
  const auto f = run("functional land --k 1 --box 1,5,0,1 --out func");
  REQUIRE(f.status == 0);
  const double expect = functional_integral(g, {1, {1, 5, 0, 1}});
  const auto rj = nlohmann::json::parse(io::read_file(at("func/result.json")));
  CHECK(rj["functional"].get<double>() == expect);
}

TEST_CASE("statistics commands") {
  io::write_file(at("a.txt"), "0.40\n0.44\n0.47\n0.41\n");
  io::write_file(at("b.txt"), "0.006\n0.007\n0.008\n0.005\n");
  REQUIRE(run("ttest a.txt b.txt --out tt").status == 0);
  const auto tj = nlohmann::json::parse(io::read_file(at("tt/result.json")));
  const std::vector<double> a{0.40, 0.44, 0.47, 0.41}, b{0.006, 0.007, 0.008, 0.005};
  const auto t = two_sample_t(a, b);
  CHECK(tj["t"].get<double>() == t.t);
  CHECK(tj["p_value"].get<double>() == t.p_value);
  REQUIRE(run("ci a.txt --alpha 0.01 --out ci").status == 0);
  const auto cj = nlohmann::json::parse(io::read_file(at("ci/result.json")));
  const auto ci = confidence_interval(a, 0.01);
  CHECK(cj["lo"].get<double>() == ci.first);
  CHECK(cj["hi"].get<double>() == ci.second);
  REQUIRE(run("permtest a.txt b.txt --perms 500 --seed 4 --out pt").status == 0);
  const auto pj = nlohmann::json::parse(io::read_file(at("pt/result.json")));
  CHECK(pj["p_value"].get<double>() == permutation_test(a, b, 500, 4));
  CHECK(manifest("pt")["seed"] == 4);
}

TEST_CASE("exit codes") {
  CHECK(run("no-such-command").status == 1);
  CHECK(run("landscape").status == 1);
  CHECK(run("landscape missing.txt --out x").status == 2);
  io::write_file(at("bad.txt"), "0 ; 0 0\n0 1 ; a 0\n");
  CHECK(run("landscape bad.txt --out x").status == 2);
  CHECK(run("landscape bad.txt --resolution -1 --out x").status != 0);
  CHECK(run("ci a.txt --alpha 2 --out x").status == 2);
}

TEST_CASE("experiments are deterministic across thread counts") {
  const std::string common = "experiment circles --samples 3 --points 10 --resolution 0.5 --seed 9";
  REQUIRE(run(common + " --threads 1 --out e1").status == 0);
  REQUIRE(run(common + " --threads 3 --out e3").status == 0);
  const auto m1 = manifest("e1");
  const auto m3 = manifest("e3");
  CHECK(m1 == m3);
  for (const auto& rel : m1["outputs"]) {
    const std::string p = rel.get<std::string>();
    CAPTURE(p);
    CHECK(io::read_file(at("e1") / p) == io::read_file(at("e3") / p));
  }
}

}  // TEST_SUITE
