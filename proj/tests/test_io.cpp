#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "zsk/io.hpp"

using namespace zsk;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("zsk_test_" + std::to_string(std::rand()) + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  int rc = std::system((std::string(ZSK_BIN) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("instance round trip") {
  auto inst = hamming_cube(3);
  inst.measure = PointMeasure{std::vector<double>(8, 2.0)};
  auto j = io::to_json(inst);
  CHECK(j["schema_version"] == io::kSchemaVersion);
  auto back = io::instance_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.space.dist() == inst.space.dist());
  REQUIRE(back.coords);
  CHECK(back.coords->coords == inst.coords->coords);
  CHECK(back.measure->w == inst.measure->w);

  nlohmann::json bad = {{"dist", {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}}};
  CHECK_THROWS_AS(io::instance_from_json(bad), Error);
}

TEST_CASE("reports") {
  auto r = io::report("x", {{"a", 1}});
  CHECK(r["schema_version"] == 1);
  CHECK(r["kind"] == "x");

  ThresholdedGraph g;
  g.n = 2;
  g.edges = {{0, 1}};
  g.sigma = {0.5};
  CompatibilityCertificate cert{1, {0.0, kInf}, {1, 1}};
  auto j = io::to_json(g, &cert);
  CHECK(j["cert"]["Delta"][1].is_null());
  auto back = io::graph_from_json(j);
  CHECK(back.edges == g.edges);
  CHECK(back.sigma == g.sigma);

  EuclideanMap f{2, {{1, 2}, {3, 4}}};
  CHECK(io::map_from_json(io::to_json(f)).coords == f.coords);

  auto cut = random_cut_instance(5, 3);
  auto cj = io::cut_instance_from_json(io::to_json(cut));
  CHECK(cj.capacities == cut.capacities);
  CHECK(io::cut_mask({1, 0, 1}) == 5);
}

TEST_CASE("cli exit codes and outputs") {
  TempDir tmp;
  auto cube = tmp.file("cube3.json");
  CHECK(run("gen --family hamming_cube --dim 3 --out " + cube) == 0);
  auto inst = io::instance_from_json(io::read_file(cube));
  CHECK(inst.space.size() == 8);

  auto emb = tmp.file("emb.json");
  CHECK(run("embed --in " + cube + " --neg-type --seed 7 --N 64 --out " + emb) == 0);
  auto e = io::read_file(emb);
  CHECK(e["kind"] == "embedding");
  CHECK(e["schema_version"] == 1);
  CHECK(e["report"]["distortion"].get<double>() >= std::sqrt(3.0) - 1e-6);
  auto emb2 = tmp.file("emb2.json");
  CHECK(run("embed --in " + cube + " --neg-type --seed 7 --N 64 --out " + emb2) == 0);
  CHECK(io::read_file(emb2) == e);

  auto none = tmp.file("none.json");
  CHECK(run("embed --in " + cube + " --frobnicate --out " + none) == 1);
  CHECK_FALSE(fs::exists(none));
  CHECK(run("") == 1);

  auto tri = tmp.file("tri.json");
  std::ofstream(tri) << R"({"dist": [[0,1,3],[1,0,1],[3,1,0]]})";
  CHECK(run("validate --in " + tri) == 2);
  auto dia = tmp.file("dia.json");
  CHECK(run("gen --family diamond --level 2 --out " + dia) == 0);
  CHECK(run("embed --in " + dia + " --neg-type --out " + none) == 2);
  CHECK_FALSE(fs::exists(none));

  auto big = tmp.file("big.json");
  CHECK(run("gen --family hamming_cube --dim 5 --out " + big) == 0);
  CHECK(run("iso --in " + big + " --t 1 --brute --out " + none) == 3);

  auto zs = tmp.file("zs.json");
  CHECK(run("zeroset --in " + cube + " --tau 2 --draws 10 --seed 3 --out " + zs) == 0);
  CHECK(io::read_file(zs)["draws"].size() == 10);
  auto sc = tmp.file("sc.json");
  CHECK(run("sparsest-cut --random 5 --seed 2 --out " + sc) == 0);
  auto s = io::read_file(sc);
  CHECK(s["sdp_value"].get<double>() <= s["opt"].get<double>() + 1e-4);
  auto pts = tmp.file("pts.json");
  std::ofstream(pts) << R"({"points": [[0,0],[1,0],[0,1],[2,2],[3,1]]})";
  auto le = tmp.file("le.json");
  CHECK(run("line-embed --in " + pts + " --candidates 10 --out " + le) == 0);
  CHECK(io::read_file(le)["kind"] == "line_embed");
}
