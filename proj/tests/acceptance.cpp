// Acceptance suite driver: runs every criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code 0 iff all pass.
#include <cstdlib>
#include <cstring>
#include <string>

#include "schro/verify.hpp"

int main(int argc, char** argv) {
  schro::VerifyOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) opt.fast = true;
    if (std::strcmp(argv[i], "--dim") == 0 && i + 1 < argc)
      opt.dim_filter = std::atoi(argv[++i]);
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      opt.seed = static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10));
  }
  return schro::report_acceptance(schro::run_acceptance(opt));
}
