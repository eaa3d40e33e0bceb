#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef PHASESTAR_CLI_PATH
#error "PHASESTAR_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("phasestar_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run(const std::string& args, const std::string& log) {
  const std::string cmd =
      std::string(PHASESTAR_CLI_PATH) + " " + args + " >" + log + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("amplitude subcommand") {
  TempDir tmp;
  const std::string report = tmp.file("report.json");
  const std::string log = tmp.file("log.txt");

  const int rc = run("amplitude --hamiltonian [[1,1,1.0,0.0]]"
                     " --alpha-i 0.5 0 --alpha-f 0 0.2 -T 1.0"
                     " --routes star oracle --tolerance 1e-8 --out " + report,
                     log);
  CHECK(rc == 0);
  REQUIRE(fs::exists(report));
  const json rep = json::parse(slurp(report));
  CHECK(rep["within_tolerance"].get<bool>());
  CHECK(rep["max_relative_error"].get<double>() <= 1e-8);

  // reports are byte-stable apart from the labeled timing field
  const std::string report2 = tmp.file("report2.json");
  CHECK(run("amplitude --hamiltonian [[1,1,1.0,0.0]]"
            " --alpha-i 0.5 0 --alpha-f 0 0.2 -T 1.0"
            " --routes star oracle --tolerance 1e-8 --out " + report2,
            log) == 0);
  json a = json::parse(slurp(report));
  json b = json::parse(slurp(report2));
  a.erase("timing_ms");
  b.erase("timing_ms");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("config file overrides flags") {
  TempDir tmp;
  const std::string cfg = tmp.file("cfg.json");
  const std::string report = tmp.file("report.json");
  write(cfg, R"({"alpha_i": [0.3, 0.0]})");
  const int rc = run("amplitude --alpha-i 0.9 0 --routes star oracle"
                     " --config " + cfg + " --out " + report,
                     tmp.file("log.txt"));
  CHECK(rc == 0);
  const json rep = json::parse(slurp(report));
  CHECK(rep["config"]["alpha_i"][0].get<double>() == 0.3);
}

TEST_CASE("exit codes: config, numeric, tolerance") {
  TempDir tmp;
  const std::string log = tmp.file("log.txt");

  // empty route set is a config error
  const std::string cfg = tmp.file("routes.json");
  write(cfg, R"({"routes": []})");
  CHECK(run("amplitude --config " + cfg, log) == 2);

  // malformed config file
  const std::string badcfg = tmp.file("bad.json");
  write(badcfg, "{ nope");
  CHECK(run("amplitude --config " + badcfg, log) == 2);

  // coarse truncation is a numeric route error
  CHECK(run("amplitude --alpha-i 6 0 --fock-dim 8 --routes oracle", log) == 3);

  // sliced against oracle at N = 2 disagrees at O(eps): tolerance violation
  CHECK(run("amplitude --routes sliced oracle --slices 2 --rule-nodes 32"
            " --tolerance 1e-10",
            log) == 1);
}

TEST_CASE("convergence subcommand") {
  TempDir tmp;
  const std::string log = tmp.file("log.txt");
  const std::string csv = tmp.file("points.csv");
  const std::string side = tmp.file("slope.json");

  CHECK(run("convergence --n-list 8 16 32 --rule-nodes 24 --csv " + csv +
                " --out " + side,
            log) == 0);
  const json sj = json::parse(slurp(side));
  CHECK(sj["slope"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
  const std::string points = slurp(csv);
  CHECK(points.rfind("N,epsilon,abs_error,rel_error\n", 0) == 0);

  // too-short refinement list
  CHECK(run("convergence --n-list 8 16", log) == 2);

  // free evolution is exact: slope fit skipped
  CHECK(run("convergence --hamiltonian [] --n-list 4 8 16 --rule-nodes 16"
            " --out " + tmp.file("free.json"),
            log) == 0);
  const json fj = json::parse(slurp(tmp.file("free.json")));
  CHECK(fj["exact"].get<bool>());
}

TEST_CASE("qdist subcommand") {
  TempDir tmp;
  const std::string log = tmp.file("log.txt");
  const std::string csv = tmp.file("grid.csv");
  const std::string side = tmp.file("side.json");

  CHECK(run("qdist --s -1 --rule-nodes 48 --window 2 --csv " + csv +
                " --out " + side,
            log) == 0);
  const json sj = json::parse(slurp(side));
  CHECK(sj["normalization_residual"].get<double>() <= 1e-6);
  REQUIRE(fs::exists(csv));

  // first grid row is alpha = -2 - 2i; vacuum value e^{-8}/pi
  const std::string grid = slurp(csv);
  const auto row_start = grid.find('\n') + 1;
  const auto row = grid.substr(row_start, grid.find('\n', row_start) - row_start);
  REQUIRE(row.rfind("-2,-2,", 0) == 0);
  const double value = std::stod(row.substr(6));
  CHECK(value == doctest::Approx(std::exp(-8.0) / M_PI).epsilon(1e-6));

  CHECK(run("qdist --s 1", log) == 3);

  // explicit beta-rule scale: valid when narrower than the decay, config
  // error when wider
  CHECK(run("qdist --s -1 --rule-scale 0.9 --rule-nodes 48 --window 1.5"
            " --out " + tmp.file("scaled.json"),
            log) == 0);
  CHECK(run("qdist --s -1 --rule-scale 2.0", log) == 2);

  CHECK(run("qdist --s 1 --symbolic --alpha-i 0.5 0 --alpha-f 0 0.2 --out " +
                tmp.file("pair.json"),
            log) == 0);
  const json rec = json::parse(slurp(tmp.file("pair.json")));
  CHECK(rec["delta_pair"].contains("im_point"));

  // debug dump of the truncated state vector
  CHECK(run("qdist --s -1 --gamma 0.5 0 --rule-nodes 32 --grid-points 3"
            " --dump-state " + tmp.file("state.json"),
            log) == 0);
  const json state = json::parse(slurp(tmp.file("state.json")));
  CHECK(state["dim"].get<int>() >= 32);
  CHECK(state["entries"].size() == state["dim"].get<std::size_t>());
}

TEST_CASE("star-product subcommand") {
  TempDir tmp;
  const std::string log = tmp.file("log.txt");
  const std::string out = tmp.file("prod.json");
  const std::string mat = tmp.file("mat.json");

  CHECK(run("star-product --left [[0,1,1.0,0.0]] --right [[1,0,1.0,0.0]]"
            " --out " + out + " --fock-dim 4 --fock-out " + mat,
            log) == 0);
  const json prod = json::parse(slurp(out));
  // a * a+ = a+a + 1
  bool has_const = false, has_number = false;
  for (const auto& rec : prod) {
    if (rec[0] == 0 && rec[1] == 0 && rec[2].get<double>() == 1.0)
      has_const = true;
    if (rec[0] == 1 && rec[1] == 1 && rec[2].get<double>() == 1.0)
      has_number = true;
  }
  CHECK(has_const);
  CHECK(has_number);
  const json mj = json::parse(slurp(mat));
  CHECK(mj["dim"] == 4);
  CHECK(mj["entries"].size() == 16);

  CHECK(run("star-product --left [[0,1,1.0]] --right [[1,0,1.0,0.0]]", log) ==
        2);
}

TEST_CASE("unknown subcommand is a usage error") {
  TempDir tmp;
  CHECK(run("warp-factor", tmp.file("log.txt")) == 2);
}
