#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "toric/report_json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = toric::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TORIC_TEST_DATA) + "/" + name; }

std::string scratch_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("toric_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, StratifyThreefold) {
  auto r = run({"stratify", data("threefold.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("strata (3)"), std::string::npos);
  EXPECT_NE(r.out.find("closure order: S3 < S2 < S1"), std::string::npos);
  EXPECT_NE(r.out.find("dim 1  subgroup Z/2"), std::string::npos);
  EXPECT_NE(r.out.find("root connections: confirmed"), std::string::npos);
}

TEST(Cli, NonPrimitiveRay) {
  auto r = run({"stratify", data("nonprimitive.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("use (1,2)"), std::string::npos);
  EXPECT_EQ(run({"stratify", "--normalize", data("nonprimitive.json")}).code, 0);
}

TEST(Cli, QuadrantJson) {
  auto r = run({"stratify", "--format", "json", data("quadrant.json")});
  EXPECT_EQ(r.code, 0);
  auto j = toric::Json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["strata"].size(), 1u);
  EXPECT_EQ(toric::dump_json(toric::report_to_json(toric::report_from_json(j))), r.out);
}

TEST(Cli, MalformedFileReportsPosition) {
  auto r = run({"stratify", scratch_file("mal.json", "{\"schema\":1,\n\"rank\":2,\n\"rays\":[[1,0],")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_EQ(run({"stratify", "/nonexistent/cone.json"}).code, 1);
}

TEST(Cli, Roots) {
  auto r = run({"roots", "--bound", "2", data("quadrant.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total: 6 roots"), std::string::npos);
  auto j = toric::Json::parse(run({"roots", "--bound", "2", "--format", "json", data("quadrant.json")}).out);
  EXPECT_EQ(j["roots"].size(), 6u);
  EXPECT_EQ(run({"roots", "--bound", "0", data("quadrant.json")}).code, 1);
  EXPECT_EQ(run({"roots", "--bound", "x", data("quadrant.json")}).code, 1);
}

TEST(Cli, Connections) {
  auto t = run({"connections", data("threefold.json")});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("{1,2} -> {1,2,3}: no  [integral-equalities]"), std::string::npos);
  EXPECT_NE(t.out.find("{1} -> {1,3}: yes  e = (0,1,-1) (ray 3)"), std::string::npos);
  EXPECT_NE(t.out.find("isolated faces: {1,2} (certified) {1,2,3} (certified)"), std::string::npos);

  auto q = run({"connections", data("quadric.json")});
  EXPECT_NE(q.out.find("{} -> {1}: yes"), std::string::npos);
  EXPECT_NE(q.out.find("{} -> {2}: yes"), std::string::npos);
  EXPECT_NE(q.out.find("{1} -> {1,2}: no"), std::string::npos);
  EXPECT_NE(q.out.find("{2} -> {1,2}: no"), std::string::npos);
}

TEST(Cli, StrictExitCode) {
  auto tiny = scratch_file("tiny.json", R"({"schema":1,"rank":2,"rays":[[1,0],[1,3]]})");
  EXPECT_EQ(run({"stratify", "--bound", "1", tiny}).code, 0);
  EXPECT_EQ(run({"stratify", "--bound", "1", "--strict", tiny}).code, 2);
  EXPECT_EQ(run({"connections", "--bound", "1", "--strict", tiny}).code, 2);
  EXPECT_EQ(run({"stratify", "--strict", tiny}).code, 0);
}

TEST(Cli, Luna) {
  auto r = run({"luna", data("k7_weights.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("strata (3)"), std::string::npos);
  EXPECT_EQ(count(r.out, "  L"), 3u);
  auto z2 = run({"luna", data("z2_weights.json")});
  EXPECT_NE(z2.out.find("strata (2)"), std::string::npos);
}

TEST(Cli, Stable) {
  EXPECT_EQ(run({"stable", data("k7_weights.json")}).out, "Stable\n");
  EXPECT_EQ(run({"stable", data("z2_weights.json")}).out, "Stable\n");
  auto pm = run({"stable", data("plus_minus_weights.json")});
  EXPECT_EQ(pm.code, 0);
  EXPECT_EQ(pm.out, "Unstable\noffending supports: {1} {2}\n");
  auto unreduced = scratch_file("unreduced.json", R"({"schema":1,"free_rank":0,"torsion":[2],"weights":[[3]]})");
  EXPECT_EQ(run({"stable", unreduced}).code, 1);
}

TEST(Cli, ClassGroup) {
  auto q = run({"classgroup", data("quadric.json")});
  EXPECT_NE(q.out.find("class group: Z/2"), std::string::npos);
  EXPECT_NE(q.out.find("D1 = (1)"), std::string::npos);
  EXPECT_NE(q.out.find("D2 = (1)"), std::string::npos);
  auto t = run({"classgroup", data("threefold.json")});
  EXPECT_NE(t.out.find("class group: Z/4"), std::string::npos);
  EXPECT_NE(t.out.find("{1,2}  G(O) = Z/2 = <(2)>  Cl(X,x) = Z/2"), std::string::npos);
  EXPECT_NE(run({"classgroup", data("quadrant.json")}).out.find("class group: 0"), std::string::npos);
}

TEST(Cli, DegenerateCone) {
  auto f = scratch_file("plane.json", R"({"schema":1,"rank":3,"rays":[[1,0,0],[1,2,0]]})");
  auto r = run({"stratify", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("torus factor: rank 1"), std::string::npos);
  EXPECT_NE(r.out.find("S2  dim 1"), std::string::npos);
  EXPECT_NE(run({"roots", "--bound", "1", f}).out.find("torus factor of rank 1"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"luna", "--bound", "3", data("k7_weights.json")}).code, 1);
  EXPECT_EQ(run({"stratify", "--format", "xml", data("quadrant.json")}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}
