#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "hyperfh/cli.hpp"

using namespace hyperfh;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(HYPERFH_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string write_config(const std::string& name, const json& j) {
  std::string path = "cli_test_" + name + ".json";
  std::ofstream(path) << j.dump();
  return path;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& s) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> r;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) r.push_back(cell);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("classify") {
  CHECK(run("classify --point '[0,1,0,0,0,0]'").out == "TPlus y2=1 y0=1\n");
  CHECK(run("classify --point '[0,0,1]'").out == "RealX\n");
  CHECK(run("classify --point '[1,0,0]'").out == "OffQuadric\n");
  CHECK(run("classify --point '[0,0,0,0.5210953054937474,1.1276259652063807,0]'").out.rfind("TRight", 0) == 0);
  CHECK(run("classify --point '[0,1'").code == ExitParse);
  CHECK(run("classify").code == ExitParse);
}

TEST_CASE("kernel methods") {
  const std::string pair = "'{\"z\":[0,-1,0,0,0,0],\"zp\":[0,1,0,0,0,0]}'";
  Run c = run("kernel --method closed --point " + pair);
  CHECK(c.code == 0);
  CHECK(c.out.rfind("value -0.25 0", 0) == 0);
  Run s = run("kernel --method spectral --point " + pair);
  CHECK(s.code == 0);
  double re = 0.0, im = 0.0, dev = 1.0;
  std::sscanf(s.out.c_str(), "value %lf %lf\ndeviation %lf", &re, &im, &dev);
  CHECK(std::abs(re + 0.25) < 1e-6);
  CHECK(dev < 1e-6);
  const std::string chiral = "'{\"z\":[0,0,0,0.5210953054937474,1.1276259652063807,0],"
                             "\"zp\":[0,0,0,-0.5210953054937474,1.1276259652063807,0]}'";
  Run d = run("kernel --method discrete --point " + chiral);
  CHECK(d.code == 0);
  std::sscanf(d.out.c_str(), "value %lf %lf\ndeviation %lf", &re, &im, &dev);
  CHECK(std::abs(re - 0.25 / std::pow(std::sinh(0.5), 2)) < 1e-5);
  // spectral needs T- x T+
  CHECK(run("kernel --method spectral --point " + chiral).code == ExitNumeric);
  CHECK(run("kernel --method nope --point " + pair).code == ExitParse);
}

TEST_CASE("verify") {
  Run v = run("verify --suite specfun");
  CHECK(v.code == 0);
  json j = json::parse(v.out);
  CHECK(j["schema"] == "hyperfh/1");
  bool found = false;
  for (auto& c : j["checks"])
    if (c["id"] == "mehler_x0") {
      found = true;
      CHECK(c["residual"].get<double>() < 1e-6);
      CHECK(c["status"] == "pass");
    }
  CHECK(found);
  CHECK(run("verify --suite bogus").code == ExitParse);
  // a tolerance scale of zero-ish forces failures
  CHECK(run("verify --suite geometry --tol 1e-30").code == ExitVerifyFailed);
  json l = json::parse(run("verify --suite lorentz").out);
  CHECK(l["checks"][0]["id"] == "cauchy_spectral_v0");
}

TEST_CASE("report status matches residual and tolerance") {
  VerifyReport r = run_verify("chiral");
  for (const auto& c : r.checks) CHECK(c.pass == (c.residual <= c.tolerance));
  CHECK_THROWS_AS(run_verify("nope"), Error);
}

TEST_CASE("transform: zero function, homogeneity, determinism") {
  json zero{{"schema", "hyperfh/1"},
            {"function", {{"kind", "builtin"}, {"name", "zero"}}},
            {"alpha_grid", {0.0, 1.0}},
            {"nu_grid", {0.0, 0.5}}};
  Run z = run("transform --config " + write_config("zero", zero));
  CHECK(z.code == 0);
  auto rows = csv_rows(z.out);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0][0] == "xi0");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][5] == "0");
    CHECK(rows[i][6] == "0");
  }
  json h{{"function", {{"kind", "builtin"}, {"name", "pole_product"},
                       {"params", {{"a", {0.2, 1.0}}, {"b", {-0.1, -1.0}}}}}},
         {"xi", {{1.0, 0.6, 0.8}, {2.0, 1.2, 1.6}}},
         {"nu_grid", {0.7}},
         {"side", 1},
         {"seed", 3}};
  std::string hp = write_config("homog", h);
  Run a = run("transform --config " + hp);
  Run b = run("transform --config " + hp);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto hr = csv_rows(a.out);
  REQUIRE(hr.size() == 3);
  cplx v1(std::stod(hr[1][5]), std::stod(hr[1][6])), v2(std::stod(hr[2][5]), std::stod(hr[2][6]));
  CHECK(std::abs(v2 - std::pow(2.0, cplx(-0.5, -0.7)) * v1) < 1e-9 * std::abs(v1));
}

TEST_CASE("transform: chiral run on a T<- member") {
  // 1/(x - w)^2 with w = z_{0.8}
  json c{{"mode", "chiral"},
         {"function", {{"kind", "builtin"}, {"name", "cauchy_kernel"},
                       {"params", {{"w", {0.0, 0.0, 0.0, std::sinh(0.8), std::cosh(0.8), 0.0}}}}}},
         {"phi_grid", {0.3}},
         {"eta_grid", {0.7}},
         {"ell_max", 6},
         {"chirality", "both"}};
  Run r = run("transform --config " + write_config("chiral", c));
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 15);
  double right = 0.0, left = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double m = std::hypot(std::stod(rows[i][4]), std::stod(rows[i][5]));
    (rows[i][0] == "right" ? right : left) = std::max(rows[i][0] == "right" ? right : left, m);
  }
  CHECK(right < 1e-6);
  CHECK(left > 1e-3);
}

TEST_CASE("transform: invalid configs") {
  CHECK(run("transform --config does_not_exist.json").code == ExitParse);
  json bad{{"function", {{"kind", "builtin"}, {"name", "zero"}}}, {"alpha_grid", json::array()}, {"nu_grid", {0.0}}};
  CHECK(run("transform --config " + write_config("bad", bad)).code == ExitParse);
  json tol{{"function", {{"kind", "builtin"}, {"name", "zero"}}}, {"alpha_grid", {0.0}}, {"nu_grid", {0.0}}, {"tol", 2.0}};
  CHECK(run("transform --config " + write_config("tol", tol)).code == ExitParse);
  json schema{{"schema", "hyperfh/9"}, {"function", {{"kind", "builtin"}, {"name", "zero"}}}};
  CHECK(run("transform --config " + write_config("schema", schema)).code == ExitParse);
}
