// Acceptance gate: runs the seven numeric criteria in-process and, when given
// the CLI binary via --cli, exercises the end-to-end criterion (selftest exit
// code and byte-identical reports). Prints one line per criterion.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tbgeo/selftest.hpp"

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_command(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WEXITSTATUS(rc);
}

bool cli_criterion(const std::string& cli, std::string& detail) {
  if (run_command(cli + " selftest > /dev/null") != 0) {
    detail = "selftest exit code nonzero";
    return false;
  }

  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path();
  fs::path cfg = dir / "tbg_accept_cfg.toml";
  {
    std::ofstream out(cfg);
    out << "seed = 42\n"
           "tolerance = 1e-5\n"
           "grid = 5\n"
           "checks = [\"classify\", \"bienergy\"]\n"
           "[manifold]\n"
           "id = \"euclidean\"\n"
           "n = 2\n"
           "[field]\n"
           "components = [\"-y\", \"x\"]\n"
           "[domain]\n"
           "lower = [-1.0, -1.0]\n"
           "upper = [1.0, 1.0]\n"
           "quadrature_points = 8\n";
  }
  fs::path r1 = dir / "tbg_accept_r1.json";
  fs::path r2 = dir / "tbg_accept_r2.json";
  std::string base = cli + " check --config " + cfg.string() + " --seed 42 --out ";
  if (run_command(base + r1.string()) != 0 || run_command(base + r2.string()) != 0) {
    detail = "check run failed";
    return false;
  }
  std::string b1 = read_file(r1), b2 = read_file(r2);
  if (b1.empty() || b1 != b2) {
    detail = "reports not byte-identical";
    return false;
  }
  detail = "selftest exit 0; identical seeds give byte-identical reports";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  std::vector<tbg::CriterionResult> results = tbg::run_selftest();
  bool ok = tbg::print_selftest(results, std::cout);

  if (!cli.empty()) {
    std::string detail;
    bool pass = cli_criterion(cli, detail);
    std::printf("criterion 8 %-24s %s  [%s]\n", "cli-end-to-end",
                pass ? "pass" : "FAIL", detail.c_str());
    ok = ok && pass;
  } else {
    std::printf("criterion 8 %-24s skipped (no --cli binary given)\n", "cli-end-to-end");
  }
  return ok ? 0 : 1;
}
