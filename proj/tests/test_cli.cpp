#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "lyapcert/cli.hpp"

using namespace lyapcert;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lyapcert_cli_" + std::to_string(getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"verify", "--no-such-flag"}).code == 2);
  CHECK(call({"verify", "--system", "unknown"}).code == 2);
  CHECK(call({"verify", "--system", "paper", "--certificate", "x^2 +", "--out", scratch("u").string()}).code == 2);
  CHECK(call({"verify", "--system", "paper", "--certificate", "z^2"}).code == 2);
  CHECK(call({"nonexist", "--kmax", "3"}).code == 2);
  CHECK(call({"nonexist", "--kmax", "0"}).code == 2);
  CHECK(call({"nonexist", "--kmax", "six"}).code == 2);
  CHECK(call({"simulate", "--x0", "1"}).code == 2);
  CHECK(call({"simulate", "--x0", "nan,0"}).code == 2);
  CHECK(call({"figure", "--levels=-1"}).code == 2);
  CHECK(call({"figure", "--levels", "0"}).code == 2);
  CHECK(call({"figure", "--levels", "one"}).code == 2);
  CHECK(call({"recheck", "/nonexistent/report.json"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("list shows every catalog entry") {
  const auto r = call({"list"});
  CHECK(r.code == 0);
  for (const char* name : {"paper", "simple", "linear", "bacciotti-rosier-0", "bacciotti-rosier-1",
                           "bacciotti-rosier-1/2", "bacciotti-rosier-printed-0", "bacciotti-rosier-printed-1"})
    CHECK(r.out.find(std::string(name) + "  [") != std::string::npos);
}

TEST_CASE("verify the paper certificate") {
  const auto dir = scratch("verify");
  const auto r = call({"verify", "--system", "paper", "--out", dir.string()});
  CHECK(r.code == 0);
  const json doc = json::parse(slurp(dir / "verify_paper.json"));
  CHECK(doc["kind"] == "verify");
  CHECK(doc["report"]["overall"] == "pass");
  const auto& checks = doc["report"]["checks"];
  REQUIRE(checks.size() == 5);
  const std::vector<std::string> names{"positivity", "tangency", "decrease_identity", "no_common_zero",
                                       "radial_unboundedness"};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(checks[i]["name"] == names[i]);
    CHECK(checks[i]["verdict"] == "pass");
    for (const auto& id : checks[i]["identities"]) CHECK(id["residual"] == "0");
  }
  CHECK(checks[4]["signs"][0]["form"] == "1*x^4 - 2*x^2*y^2 + 1*y^4");
  CHECK(checks[3]["identities"][0]["label"] == "y a + x b - 8 (x y)^3");
  CHECK(doc["sampling"]["counterexample"].is_null());

  CHECK(call({"recheck", (dir / "verify_paper.json").string()}).code == 0);

  // Corrupt the zero residual of the tangency identity.
  json bad = doc;
  bad["report"]["checks"][1]["identities"][0]["residual"] = "1*x^2";
  std::ofstream(dir / "tampered.json") << bad.dump();
  CHECK(call({"recheck", (dir / "tampered.json").string()}).code == 1);
}

TEST_CASE("verify rejects a wrong certificate and accepts the control") {
  const auto dir = scratch("verify2");
  auto r = call({"verify", "--system", "paper", "--certificate", "1*x^2+1*y^2", "--out", dir.string()});
  CHECK(r.code == 1);
  json doc = json::parse(slurp(dir / "verify_paper.json"));
  CHECK(doc["report"]["checks"][1]["name"] == "tangency");
  CHECK(doc["report"]["checks"][1]["verdict"] == "fail");

  // Certificate from a file.
  std::ofstream(dir / "cert.txt") << "x^2 + y^2\n";
  r = call({"verify", "--system", "linear", "--certificate", (dir / "cert.txt").string(), "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(call({"verify", "--system", "simple", "--out", dir.string()}).code == 0);
  CHECK(call({"verify", "--system", "bacciotti-rosier-1", "--out", dir.string()}).code == 0);

  r = call({"verify", "--system", "bacciotti-rosier-printed-1", "--out", dir.string()});
  CHECK(r.code == 1);
  doc = json::parse(slurp(dir / "verify_bacciotti-rosier-printed-1.json"));
  CHECK(doc["report"]["overall"] == "inconclusive");
  CHECK(call({"verify", "--system", "bacciotti-rosier-printed-0", "--out", dir.string()}).code == 1);
}

TEST_CASE("nonexist on the paper system, recheck and determinism") {
  const auto a = scratch("ne_a");
  const auto b = scratch("ne_b");
  CHECK(call({"nonexist", "--system", "paper", "--kmax", "6", "--cap", "200", "--out", a.string()}).code == 0);
  CHECK(call({"nonexist", "--system", "paper", "--kmax", "6", "--cap", "200", "--out", b.string()}).code == 0);
  const std::string text = slurp(a / "nonexist_paper.json");
  const json doc = json::parse(text);
  // The output directory is part of the recorded config; everything else must match byte for byte.
  json other = json::parse(slurp(b / "nonexist_paper.json"));
  other["config"]["out"] = doc["config"]["out"];
  CHECK(other.dump(2) + "\n" == text);

  REQUIRE(doc["degrees"].size() == 3);
  for (const auto& d : doc["degrees"]) {
    CHECK(d["outcome"] == "infeasible_certified");
    CHECK(d["recheck"] == true);
    CHECK(d["farkas_multipliers"].size() == d["lp"]["rows"].size());
    for (const auto& m : d["farkas_multipliers"]) CHECK(std::regex_match(m.get<std::string>(), std::regex("-?[0-9]+(/[0-9]+)?")));
  }
  CHECK(call({"recheck", (a / "nonexist_paper.json").string()}).code == 0);

  json bad = doc;
  auto& mult = bad["degrees"][1]["farkas_multipliers"];
  for (auto& m : mult)
    if (m != "0") {
      m = "12345";
      break;
    }
  std::ofstream(a / "tampered.json") << bad.dump();
  CHECK(call({"recheck", (a / "tampered.json").string()}).code == 1);

  std::ofstream(a / "garbage.json") << "{\"kind\": \"nonexist\", \"system\": \"paper\", \"degrees\": [{}]}";
  CHECK(call({"recheck", (a / "garbage.json").string()}).code == 2);
  std::ofstream(a / "notjson.json") << "not json";
  CHECK(call({"recheck", (a / "notjson.json").string()}).code == 2);
}

TEST_CASE("nonexist on the linear control") {
  const auto dir = scratch("ne_lin");
  const auto r = call({"nonexist", "--system", "linear", "--kmax", "2", "--out", dir.string()});
  CHECK(r.code == 1);
  const json doc = json::parse(slurp(dir / "nonexist_linear.json"));
  CHECK(doc["degrees"][0]["outcome"] == "candidate_survived");
  CHECK(doc["degrees"][0]["candidate"] == "1*x^2 + 1*y^2");
  CHECK(call({"recheck", (dir / "nonexist_linear.json").string()}).code == 0);
}

TEST_CASE("simulate") {
  const auto dir = scratch("sim");
  auto r = call({"simulate", "--system", "paper", "--x0", "2,2", "--out", dir.string()});
  CHECK(r.code == 0);
  std::string csv = slurp(dir / "trajectory_paper.csv");
  CHECK(csv.rfind("t,x,y,W\n0,2,2,4\n", 0) == 0);

  r = call({"simulate", "--system", "paper", "--x0", "0,0", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(slurp(dir / "trajectory_paper.csv") == "t,x,y,W\n0,0,0,0\n");

  r = call({"simulate", "--system", "paper", "--x0", "1e9,0", "--out", dir.string()});
  CHECK((r.code == 0 || r.code == 1));
  MESSAGE(r.out);

  r = call({"simulate", "--system", "simple", "--x0", "1,1", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("converged") != std::string::npos);

  r = call({"simulate", "--system", "paper", "--x0", "2,2", "--max-steps", "10", "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("step_limit") != std::string::npos);
}

TEST_CASE("figure") {
  const auto dir = scratch("fig");
  auto r = call({"figure", "--out", dir.string()});
  CHECK(r.code == 0);
  const std::string svg = slurp(dir / "figure.svg");
  CHECK(svg.find("width=\"800\" height=\"800\"") != std::string::npos);
  CHECK(count(svg, "<polyline class=\"trajectory\"") == 1);
  CHECK(count(svg, "<polygon class=\"level-set\"") == 3);
  for (const char* level : {"0.250000", "1.000000", "4.000000"})
    CHECK(svg.find(std::string("data-level=\"") + level + "\"") != std::string::npos);
  // The trajectory starts at (2, 2): top right of the centered viewport.
  std::smatch start;
  REQUIRE(std::regex_search(svg, start, std::regex("class=\"trajectory\"[^>]*points=\"([0-9.]+),([0-9.]+)")));
  CHECK(std::stod(start[1]) > 400.0);
  CHECK(std::stod(start[2]) < 400.0);
  CHECK(std::stod(start[1]) - 400.0 == doctest::Approx(400.0 - std::stod(start[2])).epsilon(1e-4));
  CHECK(fs::exists(dir / "figure_trajectory.csv"));
  CHECK(slurp(dir / "figure_level_1.csv").rfind("theta,r,x,y\n0,1,1,0\n", 0) == 0);

  const auto only_m = scratch("fig_m");
  CHECK(call({"figure", "--levels", "1", "--out", only_m.string()}).code == 0);
  CHECK(count(slurp(only_m / "figure.svg"), "<polygon class=\"level-set\"") == 1);
}

TEST_CASE("config round trip and override") {
  cli::RunConfig c;
  c.command = "figure";
  c.system = "linear";
  c.certificate = "x^2 + y^2";
  c.kmax = 4;
  c.x0 = {0.5, -1.25};
  c.levels = {0.5, 2.0};
  c.integrator.t_max = 7.5;
  c.seed = 99;
  const auto back = cli::apply_config(cli::to_json(c), cli::RunConfig{});
  CHECK(cli::to_json(back) == cli::to_json(c));
  CHECK_THROWS_AS(cli::apply_config(json{{"kmax", "six"}}, {}), std::invalid_argument);

  const auto dir = scratch("cfg");
  std::ofstream(dir / "run.json") << json{{"system", "linear"}, {"out", dir.string()}}.dump();
  // The config file wins over --system paper.
  const auto r = call({"verify", "--system", "paper", "--config", (dir / "run.json").string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "verify_linear.json"));
  const json doc = json::parse(slurp(dir / "verify_linear.json"));
  CHECK(doc["config"]["system"] == "linear");

  std::ofstream(dir / "bad.json") << json{{"levels", "1"}}.dump();
  CHECK(call({"figure", "--config", (dir / "bad.json").string()}).code == 2);
}
