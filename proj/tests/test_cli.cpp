#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "engel/cli.hpp"
#include "engel/expression.hpp"
#include "support/oracles.hpp"

using namespace engel;
using P = RationalPolynomial;

namespace {

std::string data(const std::string& name) { return std::string(ENGEL_TEST_DATA) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string summary(const std::string& csv, const std::string& key) {
  std::istringstream in(csv);
  std::string line;
  const std::string prefix = "# summary " + key + "=";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("engel_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("expression parser examples") {
    const P p = parse_expression("u1^2 - 1/2*u2");
    CHECK(p.size() == 2);
    CHECK(p.coefficient({2, 0, 0, 0}) == 1);
    CHECK(p.coefficient({0, 1, 0, 0}) == make_rational(-1, 2));
    CHECK(parse_expression("u1*(u1+u2)^2").size() == 3);
    CHECK(parse_expression("0.25*u1") == P(make_rational(1, 4)) * P::variable(0));
    CHECK(parse_expression("u1^2/2") == P(make_rational(1, 2)) * P::variable(0).pow(2));
    CHECK(parse_expression("-(u2 - 3)") == P(make_rational(3)) - P::variable(1));
    CHECK(parse_expression("0").is_zero_poly());
  }

  TEST_CASE("expression parser errors carry positions") {
    try {
      parse_expression("u1 + u3");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == 6);
      CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
    }
    try {
      parse_expression("u1 +\n  u2^1.5");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_expression("1..2"), ParseError);
    CHECK_THROWS_AS(parse_expression("u1/u2"), ParseError);
    CHECK_THROWS_AS(parse_expression("u1/0"), ParseError);
    CHECK_THROWS_AS(parse_expression("(u1"), ParseError);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
    CHECK_THROWS_AS(parse_expression("u1 $ 2"), ParseError);
  }

  TEST_CASE("print then parse is the identity") {
    oracle::Gen g(71);
    for (int n = 0; n < 300; ++n) {
      const P p = g.small_poly(9, 7) + P(g.rational()) * P::variable(0) - P(g.rational()) * P::variable(1) +
                  P(g.rational());
      REQUIRE(parse_expression(print_expression(p)) == p);
    }
    CHECK(print_expression(parse_expression("u1^2 - 1/2*u2")) == "u1^2 - 1/2*u2");
  }

  TEST_CASE("surface files") {
    const auto s = load_surface(data("tplane.json"));
    CHECK(s.points.size() == 1);
    CHECK(s.domain[0][0] == -1);
    CHECK(s.components[0] == P(make_rational(1, 3)));
    const auto c = s.chart();
    CHECK(c.domain().hi[1] == 1.0);

    const std::string ok = R"({"name":"x","components":["u1","u2","0","0"],"domain":[[-1,1],[-1,1]]})";
    CHECK_NOTHROW(parse_surface(ok));
    CHECK_THROWS_AS(parse_surface(R"({"name":"x","components":["u1","u2","0"],"domain":[[-1,1],[-1,1]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_surface(R"({"name":"x","components":["u1","u2","0","0"],"domain":[[1,-1],[-1,1]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_surface(R"({"name":"x","components":["u1","u2","0","0"],"domain":[[-1,1],[-1,1]],"xi":["0","1","0"]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_surface(R"({"name":"x","components":["u1","u3","0","0"],"domain":[[-1,1],[-1,1]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_surface("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(load_surface(data("missing.json")), std::invalid_argument);
  }

  TEST_CASE("decimal literals in surface files are exact") {
    const auto s = parse_surface(R"({"name":"x","components":["0.1*u1","u2","0","0"],"domain":[["-0.5",0.5],[-1,1]]})");
    CHECK(s.components[0] == P(make_rational(1, 10)) * P::variable(0));
    CHECK(s.domain[0][0] == make_rational(-1, 2));
  }

  TEST_CASE("run configuration") {
    RunConfig c = default_config();
    CHECK_NOTHROW(c.validate());
    apply_config_json(c, R"({"kappa3": 1, "quadrature": {"resolution": 8, "levels": 2}, "seed": 5})");
    CHECK(c.norm.kappa3 == 1.0);
    CHECK(c.quadrature.resolution == 8);
    CHECK(c.seed == 5);
    CHECK_THROWS_AS(apply_config_json(c, R"({"kappa4": -1})"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_json(c, R"({"quadrature": {"levels": 0}})"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_json(c, R"({"zero_tolerance": 0})"), std::invalid_argument);
    CHECK_THROWS_AS(apply_config_json(c, "[1, 2]"), std::invalid_argument);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"degree", "--surface", data("vplane.json"), "--grid", "5"}).code == kExitOk);
    CHECK(run({"--help"}).code == kExitOk);
    CHECK(run({}).code == kExitValidation);
    CHECK(run({"nope"}).code == kExitValidation);
    CHECK(run({"degree"}).code == kExitValidation);
    CHECK(run({"degree", "--surface", data("missing.json")}).code == kExitValidation);
    CHECK(run({"density", "--surface", data("vplane.json"), "--radii", "1/4,-1"}).code == kExitValidation);
    CHECK(run({"check-distance", "--kappa3", "-1"}).code == kExitValidation);
    const auto bad = run({"degree", "--surface", data("missing.json")});
    CHECK(bad.out.empty());
    CHECK(bad.err.find("error:") != std::string::npos);
    // A coarse quadrature against a tight tolerance cannot converge.
    const auto cfg = temp_file("tight.json", R"({"quadrature": {"rel_tol": 1e-14, "abs_tol": 1e-16}})");
    const auto wavy = temp_file("wavy.json", R"({"name":"wavy","components":["u1","u2^2 + u1","u1*u2","u1^3 - u2"],
                                               "domain":[[-1,1],[-1,1]],"xi":["1","1","1"]})");
    const auto nc = run({"stokes", "--surface", wavy, "--center", "0.1,0.2", "--radius", "0.3", "--resolution", "4",
                         "--levels", "2", "--config", cfg});
    CHECK(nc.code == kExitNonConvergence);
    CHECK(nc.out.find("radius,line,surface") == 0);
    CHECK(nc.err.find("did not converge") != std::string::npos);
  }

  TEST_CASE("every module operation is reachable from exactly one command") {
    const auto& table = operation_table();
    std::set<std::string> ops;
    for (const auto& [op, cmd] : table) {
      CHECK(ops.insert(op).second);
      CHECK(std::find(command_names().begin(), command_names().end(), cmd) != command_names().end());
    }
    for (const char* op : {"surface_degree", "spherical_factor", "federer_density", "stokes_check", "gamma_expansion",
                           "divergence_probe", "degree_constraint_residuals", "horizontality_residual",
                           "triangle_defect_sampler"}) {
      CHECK(ops.count(op) == 1);
    }
    for (const auto& cmd : command_names()) {
      CHECK(std::any_of(table.begin(), table.end(), [&](const auto& e) { return e.second == cmd; }));
      CHECK(run({cmd, "--help"}).code == kExitOk);
    }
  }

  TEST_CASE("commands are deterministic for a fixed seed") {
    const std::vector<std::vector<std::string>> cmds{
        {"degree", "--surface", data("mixed.json"), "--grid", "9", "--vectors"},
        {"stokes", "--surface", data("tplane.json"), "--halvings", "2", "--resolution", "16", "--levels", "2"},
        {"blowup", "--surface", data("curved.json")},
        {"residuals", "--surface", data("mixed.json"), "--grid", "9"},
        {"check-distance", "--samples", "2000", "--ball-samples", "2000", "--seed", "4"},
        {"diverge", "--surface", data("mixed.json"), "--first", "3", "--last", "5", "--resolution", "8", "--levels",
         "2"},
    };
    for (const auto& c : cmds) {
      const auto a = run(c);
      const auto b = run(c);
      CHECK(a.code == kExitOk);
      CHECK(a.out == b.out);
      CHECK(a.out.find('\n') != std::string::npos);
    }
  }

  TEST_CASE("command outputs") {
    const auto d = run({"degree", "--surface", data("vplane.json"), "--grid", "65"});
    CHECK(d.out.rfind("u1,u2,degree\n", 0) == 0);
    CHECK(summary(d.out, "degree") == "3");
    CHECK(std::count(d.out.begin(), d.out.end(), '\n') == 1 + 65 * 65 + 2);

    const auto r = run({"residuals", "--surface", data("mixed.json"), "--grid", "5"});
    CHECK(r.out.find("y34,0.5\n") != std::string::npos);
    CHECK(summary(r.out, "degree_at_most_3") == "0");

    const auto b = run({"blowup", "--surface", data("curved.json")});
    CHECK(summary(b.out, "degree") == "3");
    CHECK(summary(b.out, "graph_indices") == "\"1,3\"");

    const auto cd = run({"check-distance", "--samples", "2000", "--ball-samples", "2000"});
    CHECK(summary(cd.out, "distance") == "certified");
    const auto bad = run({"check-distance", "--samples", "20000", "--ball-samples", "100", "--kappa3", "1e6"});
    CHECK(summary(bad.out, "distance") == "violated");
  }

  TEST_CASE("output file and seed override") {
    const auto path = (std::filesystem::temp_directory_path() / "engel_test_out.csv").string();
    std::filesystem::remove(path);
    const auto r = run({"residuals", "--surface", data("vplane.json"), "--grid", "3", "--out", path});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first == "quantity,value");

    const auto a = run({"check-distance", "--samples", "3000", "--ball-samples", "10"});
    setenv("ENGEL_SEED", "99", 1);
    const auto b = run({"check-distance", "--samples", "3000", "--ball-samples", "10"});
    const auto c = run({"check-distance", "--samples", "3000", "--ball-samples", "10", "--seed", "1"});
    unsetenv("ENGEL_SEED");
    CHECK(default_config().seed == 1);
    CHECK(a.out == c.out);
    CHECK(b.code == kExitOk);
  }
}
