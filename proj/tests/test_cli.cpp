#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "circmap/geometry.hpp"

namespace fs = std::filesystem;
using namespace circmap;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("circmap_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_domain(const fs::path& p, const std::vector<ClosedCurve>& curves) {
  std::ofstream(p) << curves_to_json(curves);
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + CIRCMAP_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

}  // namespace

TEST_CASE("map on round holes returns the input circles") {
  const auto dir = scratch("round");
  write_domain(dir / "in.json", {ClosedCurve::circle(0, 1, 256), ClosedCurve::circle(3, 0.5, 256)});
  CHECK(run("map --input " + (dir / "in.json").string() + " --out " + (dir / "out").string(), dir / "log") == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "circles.json"));
  const auto& c = j["circles"];
  REQUIRE(c.size() == 2);
  CHECK(std::abs(double(c[1]["center"][0]) - 3.0) <= 1e-8);
  CHECK(std::abs(double(c[1]["radius"]) - 0.5) <= 1e-8);
  CHECK(fs::exists(dir / "out" / "chain.json"));
  CHECK(fs::exists(dir / "out" / "mapped_points.csv"));
  CHECK(fs::exists(dir / "out" / "report.txt"));
}

TEST_CASE("malformed input") {
  const auto dir = scratch("bad");
  std::ofstream(dir / "in.json") << "{\"shapes\": []}";
  CHECK(run("map --input " + (dir / "in.json").string() + " --out " + (dir / "out").string(), dir / "log") == 1);
  CHECK(slurp(dir / "log").find("curves: field required") != std::string::npos);
}

TEST_CASE("certify needs three curves") {
  const auto dir = scratch("two");
  write_domain(dir / "in.json", {ClosedCurve::circle(0, 1, 128), ClosedCurve::circle(3, 0.5, 128)});
  CHECK(run("certify --input " + (dir / "in.json").string() + " --out " + (dir / "out").string(), dir / "log") == 3);
}

TEST_CASE("plot without a map run") {
  const auto dir = scratch("plot");
  write_domain(dir / "in.json", {ClosedCurve::circle(0, 1, 128)});
  CHECK(run("plot --input " + (dir / "in.json").string() + " --out " + (dir / "out").string(), dir / "log") == 1);
  CHECK(slurp(dir / "log").find("run map first") != std::string::npos);
}

TEST_CASE("plot after map is deterministic") {
  const auto dir = scratch("svg");
  write_domain(dir / "in.json", {ClosedCurve::circle(0, 1, 128), ClosedCurve::circle(3, 0.5, 128)});
  const std::string base = " --input " + (dir / "in.json").string() + " --grid 6x5 --out " + (dir / "out").string();
  REQUIRE(run("map" + base, dir / "log") == 0);
  REQUIRE(run("plot" + base, dir / "log") == 0);
  const auto first = slurp(dir / "out" / "image.svg");
  REQUIRE(run("plot" + base, dir / "log") == 0);
  CHECK(slurp(dir / "out" / "image.svg") == first);
  std::size_t circles = 0;
  for (auto p = first.find("<circle"); p != std::string::npos; p = first.find("<circle", p + 1)) ++circles;
  CHECK(circles == 2);
}

TEST_CASE("bad grid argument") {
  const auto dir = scratch("grid");
  write_domain(dir / "in.json", {ClosedCurve::circle(0, 1, 128)});
  CHECK(run("map --input " + (dir / "in.json").string() + " --grid 7 --out " + (dir / "out").string(), dir / "log") == 1);
}
