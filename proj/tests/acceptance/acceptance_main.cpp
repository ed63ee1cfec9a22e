// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion. The determinism
// criterion additionally re-invokes the CLI twice with the same seed and
// byte-compares the emitted files.
//
// Usage: acceptance_suite [path-to-ringq-cli]

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ringq/report.hpp"
#include "ringq/table.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool cli_double_run(const std::string& cli, std::string& detail) {
  if (cli.empty()) {
    detail = "no CLI path given; skipped external double run";
    return true;
  }
  const fs::path base = fs::temp_directory_path() / "ringq_acceptance";
  std::error_code ec;
  fs::remove_all(base, ec);
  const fs::path dir1 = base / "run1";
  const fs::path dir2 = base / "run2";
  for (const auto& dir : {dir1, dir2}) {
    const std::string command = cli + " report-all --quick --seed 424242 --out " +
                                dir.string() + " 2> /dev/null";
    if (std::system(command.c_str()) != 0) {
      detail = "CLI invocation failed: " + command;
      return false;
    }
  }
  const std::string a = slurp(dir1 / "summary.csv");
  const std::string b = slurp(dir2 / "summary.csv");
  if (a.empty() || a != b) {
    detail = "summary files differ between identical runs";
    return false;
  }
  std::ostringstream ss;
  ss << "CLI report-all twice with one seed: byte-identical (" << a.size()
     << " bytes)";
  detail = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  ringq::ReportOptions options;
  const auto outcomes = ringq::run_acceptance_criteria(options);

  int failures = 0;
  for (const auto& outcome : outcomes) {
    bool pass = outcome.pass;
    std::string detail = outcome.detail;
    if (outcome.id == 9) {
      std::string cli_detail;
      const bool cli_ok = cli_double_run(cli, cli_detail);
      pass = pass && cli_ok;
      detail += "; " + cli_detail;
    }
    std::printf("[%s] criterion %d: %s :: %s (%.1f s)\n",
                pass ? "PASS" : "FAIL", outcome.id, outcome.name.c_str(),
                detail.c_str(), outcome.seconds);
    if (!pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(outcomes.size()) - failures, outcomes.size());
  return failures == 0 ? 0 : 1;
}
