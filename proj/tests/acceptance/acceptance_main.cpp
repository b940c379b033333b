// Acceptance suite: one PASS/FAIL line per criterion. Criterion 12 runs the
// grkhs binary's `verify` twice and compares the two outputs byte for byte.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "grkhs_cli/acceptance.hpp"

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  using grkhs::cli::CriterionResult;
  bool all = true;
  for (int id = 1; id < grkhs::cli::kCriterionCount; ++id) {
    const CriterionResult r = grkhs::cli::run_criterion(id);
    std::cout << grkhs::cli::render(r) << std::endl;
    all = all && r.pass;
  }

  const auto dir = std::filesystem::temp_directory_path();
  const std::string tag = std::to_string(::getpid());
  const auto a = dir / ("grkhs_verify_a_" + tag + ".txt");
  const auto b = dir / ("grkhs_verify_b_" + tag + ".txt");
  int codes[2] = {-1, -1};
  int k = 0;
  for (const auto& p : {a, b}) {
    const std::string cmd = "\"" GRKHS_TOOL_PATH "\" verify > \"" + p.string() + "\"";
    const int status = std::system(cmd.c_str());
    codes[k++] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  const std::string first = slurp(a);
  const std::string second = slurp(b);
  const bool same = !first.empty() && first == second;
  CriterionResult r{12, "verify run twice gives byte-identical output", same,
                    "exit codes " + std::to_string(codes[0]) + "/" + std::to_string(codes[1]) + ", " +
                        std::to_string(first.size()) + " bytes, " + (same ? "identical" : "different")};
  std::cout << grkhs::cli::render(r) << std::endl;
  all = all && r.pass;
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return all ? 0 : 1;
}
