#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#ifndef COLLAPSAR_BIN
#define COLLAPSAR_BIN "collapsar"
#endif
#ifndef COLLAPSAR_DATA
#define COLLAPSAR_DATA "."
#endif

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(COLLAPSAR_BIN) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string data(const std::string& name) { return std::string(COLLAPSAR_DATA) + "/" + name; }

}  // namespace

TEST_CASE("exit codes: certified / refuted / inconclusive / usage") {
  CHECK(run("certify " + data("torus.pres")) == 0);
  CHECK(run("certify " + data("unicollapsible.pres")) == 1);
  CHECK(run("certify " + data("dunce.pres")) == 1);
  CHECK(run("certify " + data("missing.pres")) == 3);
  CHECK(run("nonsense") == 3);
}

TEST_CASE("solve exit semantics") {
  CHECK(run("solve " + data("torus2.pres") + " abAB") == 1);
  CHECK(run("solve " + data("torus2.pres") + " abABabAB") == 0);
  // not dehn-eligible without --unsafe
  CHECK(run("solve " + data("torus.pres") + " abAB") == 2);
  CHECK(run("solve " + data("torus.pres") + " abAB --unsafe") == 0);  // [a,b] = 1 in Z^2
  CHECK(run("solve " + data("torus.pres") + " a --unsafe") == 1);
  // unknown generator in the word
  CHECK(run("solve " + data("z3.pres") + " q") == 3);
}

TEST_CASE("branch prints the powered presentation") {
  CHECK(run("branch " + data("torus.pres") + " 2") == 0);
  CHECK(run("branch " + data("torus.pres") + " 0") == 3);
  CHECK(run("branch " + data("torus.pres") + " 2 2") == 3);  // one exponent per relator
}

TEST_CASE("order and sphere-search") {
  CHECK(run("order " + data("torus2.pres")) == 0);
  CHECK(run("order " + data("z3.pres")) == 0);
  CHECK(run("sphere-search " + data("dunce.pres") + " --max-area 2") == 1);
  CHECK(run("sphere-search " + data("torus.pres") + " --max-area 3") == 0);
}

TEST_CASE("ball, walls, cube") {
  CHECK(run("ball " + data("z3.pres") + " --radius 4") == 0);
  CHECK(run("ball " + data("free2.pres") + " --radius 2") == 0);
  CHECK(run("walls " + data("torus2.pres") + " --radius 5") == 0);
  CHECK(run("cube " + data("z3.pres") + " --radius 4") == 0);
}

TEST_CASE("report bundling") {
  std::string dir = "cli_report_dir";
  int rc = std::system(("rm -rf " + dir).c_str());
  REQUIRE(rc == 0);
  CHECK(run("report --out " + dir) == 3);  // nothing there yet
  CHECK(run("certify " + data("torus.pres") + " --out " + dir) == 0);
  CHECK(run("report --out " + dir) == 0);
  std::ifstream summary(dir + "/summary.txt");
  REQUIRE(summary.good());
  std::stringstream ss;
  ss << summary.rdbuf();
  CHECK(ss.str().find("certify") != std::string::npos);
}
