#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "sonic/config.hpp"
#include "sonic/error.hpp"
#include "sonic/io.hpp"

using namespace sonic;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SONIC_CLI_PATH + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sonic_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::string header_row(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') return line;
  return {};
}

}  // namespace

TEST_CASE("config: serialize and parse round-trip") {
  RunConfig c;
  c.alpha = 1.7;
  c.eps = 0.1 + 0.2;  // not exactly representable in short decimal
  c.a_list = {3.0, 5.5, 1e3};
  c.eta_list = {-1.0, -4.0};
  c.profile = VelocityProfile::constant(-0.9);
  c.radial_term = true;
  c.output_dir = "some/dir";
  const RunConfig back = parse_config(c.serialize(), "roundtrip");
  CHECK(back == c);
  CHECK(back.serialize() == c.serialize());
}

TEST_CASE("config: comments, blanks and whitespace") {
  const RunConfig c = parse_config("# comment\n\n  alpha = 2.5 \r\nn_rho=1024\n", "inline");
  CHECK(c.alpha == 2.5);
  CHECK(c.n_rho == 1024);
}

TEST_CASE("config: errors carry the origin and line") {
  try {
    parse_config("alpha=1\nbogus_key=3\n", "cfg.txt");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cfg.txt:2") != std::string::npos);
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    CHECK(e.code() == ExitCode::kConfig);
  }
  CHECK_THROWS_AS(parse_config("alpha 1\n", "x"), ConfigError);
  CHECK_THROWS_AS(parse_config("alpha=1.5abc\n", "x"), ConfigError);
  CHECK_THROWS_AS(parse_config("n_rho=12.5\n", "x"), ConfigError);
  CHECK_THROWS_AS(parse_config("alpha=nan\n", "x"), ConfigError);
  CHECK_THROWS_AS(parse_config("deterministic=maybe\n", "x"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/sonic.cfg"), ConfigError);
}

TEST_CASE("config: validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.a_list = {8.0, 4.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.eta_list = {-6.0, -2.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.order = 3;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.eps = 0.75;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("format: 17 significant digits round-trip") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("csv: metadata header echoes the resolved config") {
  RunConfig c;
  c.alpha = 1.25;
  CsvTable t{{"x", "y"}, {{1.0, 2.0}, {0.1, -3.0}}};
  const std::string doc = csv_document("unit", c, {{"note", "hello"}}, t);
  CHECK(doc.rfind("# tool=sonic", 0) == 0);
  CHECK(doc.find("# command=unit\n") != std::string::npos);
  CHECK(doc.find("# note=hello\n") != std::string::npos);
  for (const auto& [k, v] : c.entries())
    CHECK(doc.find("# config." + k + "=" + v + "\n") != std::string::npos);
  CHECK(header_row(doc) == "x,y");
  CHECK(doc.find("\n0.10000000000000001,-3\n") != std::string::npos);
  t.rows.push_back({1.0});
  CHECK_THROWS_AS(csv_document("unit", c, {}, t), DomainError);
}

TEST_CASE("json: full precision floats, null for non-finite") {
  Json j = Json::object();
  j["x"] = 0.1;
  j["bad"] = std::numeric_limits<double>::quiet_NaN();
  j["list"] = Json::array({1, 2.5});
  const std::string s = dump_json(j);
  CHECK(s.find("\"x\": 0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"bad\": null") != std::string::npos);
  CHECK(Json::parse(s)["list"][1].get<double>() == 2.5);
}

TEST_CASE("cli: configuration errors exit with 2") {
  const fs::path dir = scratch("config");
  write_file(dir / "bad.cfg", "alpha=1\nthis line is wrong\n");
  CHECK(run_cli("horizon --config " + (dir / "bad.cfg").string()).code == 2);
  CHECK(run_cli("horizon --set nonsense=1").code == 2);
  CHECK(run_cli("pde-verify --order 3").code == 2);
  CHECK(run_cli("spectrum --no-such-flag").code == 2);
  CHECK(run_cli("horizon --config " + (dir / "missing.cfg").string()).code == 2);
}

TEST_CASE("cli: resolution violations exit with 4") {
  const fs::path dir = scratch("resolution");
  const auto coarse = run_cli("pde-verify --nrho 64 --output-dir " + dir.string());
  CHECK(coarse.code == 4);
  const auto cfl = run_cli("pde-verify --dt 0.5 --output-dir " + dir.string());
  CHECK(cfl.code == 4);
}

TEST_CASE("cli: horizon for a constant profile sits at |A|") {
  const fs::path dir = scratch("horizon");
  const auto r = run_cli("horizon --set form=constant --set a_minus=-1 --output-dir " + dir.string());
  REQUIRE(r.code == 0);
  const auto pos = r.out.find("sigma_star = ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 13)) == doctest::Approx(1.0).epsilon(1e-9));
  const std::string csv = slurp(dir / "horizon.csv");
  CHECK(header_row(csv) == "x0,rho_star");
  CHECK(csv.find("# config.form=constant\n") != std::string::npos);
  const Json j = Json::parse(slurp(dir / "horizon.json"));
  CHECK(j["sigma_star"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cli: config file plus flag overrides resolve in the output header") {
  const fs::path dir = scratch("override");
  write_file(dir / "run.cfg", "alpha=2\nn_rho=1024\n");
  const auto r = run_cli("horizon --config " + (dir / "run.cfg").string() +
                         " --nrho 2048 --output-dir " + dir.string());
  REQUIRE(r.code == 0);
  const std::string csv = slurp(dir / "horizon.csv");
  CHECK(csv.find("# config.alpha=2\n") != std::string::npos);
  CHECK(csv.find("# config.n_rho=2048\n") != std::string::npos);
}

TEST_CASE("cli: spectrum and limit schemas") {
  const fs::path dir = scratch("spectrum");
  const auto r = run_cli("spectrum --set a_list=4,8 --set n_eta=21 --output-dir " + dir.string());
  REQUIRE(r.code == 0);
  CHECK(header_row(slurp(dir / "spectrum_a4.csv")) == "eta,density,c1_re,c1_im,c2_re,c2_im");
  CHECK(header_row(slurp(dir / "packet_profile.csv")) == "sigma,re,im,abs");
  CHECK(header_row(slurp(dir / "norms.csv")) == "a,norm_closed,norm_numeric,rel_err");
  const Json s = Json::parse(slurp(dir / "spectrum.json"));
  CHECK(s["totals_decreasing_in_a"].get<bool>());

  const auto l = run_cli("limit --set a_list=4,8 --output-dir " + dir.string());
  REQUIRE(l.code == 0);
  CHECK(header_row(slurp(dir / "sweep.csv")) == "a,total,total_normalized,limit,residual");
  const Json lj = Json::parse(slurp(dir / "limit.json"));
  CHECK(lj["limit"].get<double>() == doctest::Approx(1.0094125349312).epsilon(1e-11));
  CHECK_FALSE(lj["warnings"].empty());
}

TEST_CASE("cli: spectrum output does not depend on the thread count") {
  const fs::path dir = scratch("threads");
  const std::string args = "spectrum --set a_list=8 --output-dir " + dir.string();
  REQUIRE(run_cli(args, "SONIC_THREADS=1").code == 0);
  std::map<std::string, std::string> first;
  for (const auto& e : fs::directory_iterator(dir)) first[e.path().filename().string()] = slurp(e.path());
  REQUIRE(run_cli(args, "SONIC_THREADS=3").code == 0);
  CHECK(first.size() >= 4);
  for (const auto& [name, content] : first) CHECK_MESSAGE(slurp(dir / name) == content, name);
}

TEST_CASE("cli: selftest passes") {
  const auto r = run_cli("selftest");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
