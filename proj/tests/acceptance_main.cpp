// Acceptance gate: runs every verification criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion.  The final criterion checks
// that two runs of the CLI selftest emit byte-identical reports once the
// labeled timing field is removed.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "core/experiment.hpp"
#include "core/selftest.hpp"

#ifndef PHASESTAR_CLI_PATH
#error "PHASESTAR_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool selftest_determinism(std::string& detail) {
  const fs::path dir =
      fs::temp_directory_path() / "phasestar_acceptance_reports";
  fs::create_directories(dir);
  const std::string r1 = (dir / "selftest_1.json").string();
  const std::string r2 = (dir / "selftest_2.json").string();
  const std::string log = (dir / "log.txt").string();

  for (const std::string& out : {r1, r2}) {
    const std::string cmd = std::string(PHASESTAR_CLI_PATH) +
                            " selftest --out " + out + " >" + log + " 2>&1";
    const int rc = std::system(cmd.c_str());
    const int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    if (code != 0) {
      detail = "selftest run exited with " + std::to_string(code);
      return false;
    }
  }
  const std::string a = phasestar::experiment::strip_timing(slurp(r1));
  const std::string b = phasestar::experiment::strip_timing(slurp(r2));
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (a != b) {
    detail = "reports differ after removing the timing field";
    return false;
  }
  detail = "byte-identical reports (timing field excluded), " +
           std::to_string(a.size()) + " bytes";
  return true;
}

}  // namespace

int main() {
  const auto results = phasestar::selftest::run_all();
  bool ok = true;
  for (const auto& r : results) {
    std::printf("[%s] %d %s  %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    ok = ok && r.passed;
  }

  std::string detail;
  const bool det = selftest_determinism(detail);
  std::printf("[%s] 10 selftest-determinism  %s\n", det ? "PASS" : "FAIL",
              detail.c_str());
  ok = ok && det;

  std::printf("%s\n", ok ? "acceptance: all criteria passed"
                         : "acceptance: FAILURES");
  return ok ? 0 : 1;
}
