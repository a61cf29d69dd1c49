#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "symcap/cli.hpp"
#include "symcap/errors.hpp"
#include "symcap/packing.hpp"
#include "symcap/spectrum.hpp"

using namespace symcap;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("symcap_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("capacity queries") {
  auto r = run({"cap", "--domain", "ellipsoid:1,2,7", "--capacity", "spectral-diameter"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  auto j = json::parse(run({"cap", "--domain", "ellipsoid:1,2,7", "--json"}).out);
  CHECK(j["value"] == "2");
  CHECK(j["attained"] == false);
  CHECK(run({"cap", "--domain", "ellipsoid:1,inf"}).out == "2\n");
  CHECK(run({"cap", "--domain", "polydisk:1/2,3,9"}).out == "1\n");
  CHECK(run({"cap", "--domain", "ball:1,3"}).out == "1\n");
  CHECK(run({"cap", "--domain", "polydisk:1,1", "--capacity", "c2b"}).out == "2\n");
  CHECK(run({"cap", "--domain", "ellipsoid:2,3", "--capacity", "gromov-width"}).out == "2\n");
  auto csv = run({"cap", "--domain", "ellipsoid:2,3", "--format", "csv"}).out;
  CHECK(csv.rfind("value,attained,provenance\n3,false,", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({"cap", "--domain", "ellipsoid:0,1"}).code == 3);
  CHECK(run({"cap", "--domain", "ellipsoid:2,1"}).code == 3);
  CHECK(run({"cap", "--domain", "ellipsoid:1,x"}).code == 2);
  CHECK(run({"cap", "--domain", "torus:1"}).code == 2);
  CHECK(run({"cap"}).code == 2);
  CHECK(run({"launch"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"cap", "--domain", "ellipsoid:1,2", "--capacity", "ech"}).code == 2);
  CHECK(run({"spectrum", "--profile", "bump:a=1,eta=2,delta=1/100"}).code == 3);
  CHECK(run({"spectrum", "--profile", "bump:a=1,zeta=1"}).code == 2);
  CHECK(run({"spectrum", "--profile", "s_a:a=1/4", "--space", "cn:1"}).code == 3);
  CHECK(run({"check", "max-action", "--s", "3/4"}).code == 2);
  CHECK(run({"check", "max-action", "--s", "1", "--delta", "1/10"}).code == 3);
  CHECK(run({"pack", "--domain", "ellipsoid:1,3/2", "--canonical"}).code == 3);
  CHECK(run({"verify", "everything"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("spectrum reports") {
  auto r = run({"spectrum", "--profile", "s_a:a=1/4", "--space", "cpn:1", "--recap", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "{-5/4, -1/4, 3/4, 7/4}\n");
  auto b = run({"spectrum", "--profile", "bump:a=1,eta=9/10,delta=1/100", "--space", "cn:2"});
  CHECK(b.out == "{0, 179/200}\n");
  auto n = run({"spectrum", "--profile", "bump:a=1,eta=9/10,delta=1/100", "--negate"});
  CHECK(n.out == "{-179/200, 0}\n");
  auto t = run({"spectrum", "--profile", "two_ball:a=1,b=1,eta=9/10,mu=4/5,delta=1/100", "--norm"});
  CHECK(t.out.find("selected 169/100") != std::string::npos);
  auto shifted = run({"spectrum", "--profile", "s_a:a=1/4", "--space", "cpn:1", "--shift"});
  CHECK(shifted.out == "{-1/2, 1/2}\n");
  auto csv = run({"spectrum", "--profile", "reeb:sigma=1/2,delta=1/10", "--format", "csv"});
  CHECK(csv.out == "kind,lo,hi,winding,recapping,action,source\nplateau,0,1,0,0,-21/40,0\n");
}

TEST_CASE("JSON reports round trip") {
  auto s = run({"spectrum", "--profile", "reeb_composite:s=3/4,delta=1/10", "--json"});
  REQUIRE(s.code == 0);
  auto report = spectrum_from_json(json::parse(s.out));
  CHECK(report == action_spectrum(reeb_composite(parse_rational("3/4"), parse_rational("1/10"))));
  CHECK(json(report).dump(2) + "\n" == s.out);

  const std::string path = temp_path("cert.json");
  auto p = run({"pack", "--domain", "ellipsoid:1,2", "--epsilon", "1/100", "--matrix-bound", "2", "--grid", "20", "--out", path});
  REQUIRE(p.code == 0);
  CHECK(p.out.empty());
  auto cert = certificate_from_json(json::parse(slurp(path)));
  CHECK(cert.total >= parse_rational("199/100"));
  CHECK(verify_certificate(cert));
  CHECK(json(cert).dump(2) + "\n" == slurp(path));
  auto v = run({"check", "certificate", "--file", path});
  CHECK(v.code == 0);
  CHECK(v.out.find("verified true") != std::string::npos);

  auto c = run({"check", "ball-chain", "--s", "3/4", "--delta", "1/10", "--json"});
  auto cj = json::parse(c.out);
  CHECK(cj["upper"] == "21/20");
  CHECK(cj["steps"].size() == 6);
  CHECK(cj.dump(2) + "\n" == c.out);
}

TEST_CASE("checks") {
  CHECK(run({"check", "max-action", "--s", "3/4", "--delta", "1/10"}).out == "max action -13/24 <= -21/40 ok\n");
  CHECK(run({"check", "reeb-law", "--sigmas", "1/4,1/2", "--delta", "1/10"}).code == 0);
  CHECK(run({"check", "deformation", "--a", "1/2", "--epsilon", "1/10"}).code == 0);
  CHECK(run({"check", "a2", "--a", "1/3"}).out == "residual 0\n");
  CHECK(run({"check", "cylinder", "--delta", "1/10"}).out == "11/5\ninfimum 2\n");
  CHECK(run({"check", "displacement", "--energy", "1"}).out.rfind("lower 0\nupper 2\n", 0) == 0);
  CHECK(run({"check", "ball-bracket", "--epsilon", "1/100", "--delta", "1/100"}).out.rfind("lower 99/100\nupper 101/100\n", 0) == 0);
  CHECK(run({"check", "cpn-bracket", "--dim", "2", "--epsilon", "1/100"}).out.rfind("lower 49/50\nupper 1\n", 0) == 0);
  CHECK(run({"check", "special-ball", "--a", "1/4"}).out.rfind("capacity 3/4\n", 0) == 0);
}

TEST_CASE("plots and determinism") {
  std::vector<std::vector<std::string>> commands{
      {"plot", "moment", "--domain", "ellipsoid:1,2", "--canonical", "--epsilon", "1/50"},
      {"plot", "moment", "--domain", "polydisk:1,1", "--search", "--epsilon", "1/20"},
      {"plot", "profile", "--profile", "reeb_composite:s=3/4,delta=1/10"},
      {"plot", "profile", "--profile", "s_a:a=1/4", "--space", "cpn:1"},
      {"plot", "deformation", "--a", "1/2", "--epsilon", "1/10", "--samples", "0,1/2,1"},
      {"pack", "--domain", "polydisk:1,1", "--format", "svg"},
      {"spectrum", "--profile", "two_ball:a=1,b=1,eta=9/10,mu=4/5,delta=1/100", "--norm", "--json"},
      {"cap", "--domain", "polydisk:1,2", "--capacity", "bounds", "--format", "csv"},
  };
  for (const auto& cmd : commands) {
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK_MESSAGE(a.code == 0, cmd[0] << " " << cmd[1] << ": " << a.err);
    CHECK(a.out == b.out);
    if (cmd[0] == "plot" || cmd.back() == "svg") {
      CHECK(a.out.rfind("<svg", 0) == 0);
      CHECK(a.out.find("≈") != std::string::npos);
    }
  }
  CHECK(run({"plot", "moment", "--domain", "ellipsoid:1,1,1"}).code == 3);
}

TEST_CASE("polytope domains from files") {
  const std::string path = temp_path("trapezoid.json");
  {
    std::ofstream f(path);
    f << R"({"dimension": 2, "halfspaces": [
      {"normal": ["-1", "0"], "offset": "0"}, {"normal": ["0", "-1"], "offset": "0"},
      {"normal": ["0", "1"], "offset": "1"}, {"normal": ["1", "1"], "offset": "3"}]})";
  }
  auto r = run({"cap", "--domain", "polytope:" + path, "--capacity", "bounds", "--epsilon", "1/20", "--grid", "12"});
  CHECK(r.code == 0);
  CHECK(r.out.find("upper 2\n") != std::string::npos);
  CHECK(run({"cap", "--domain", "polytope:" + path}).code == 3);
  CHECK(run({"cap", "--domain", "polytope:/nonexistent.json"}).code == 2);
}
