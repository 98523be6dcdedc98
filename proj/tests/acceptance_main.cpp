// Acceptance run: one line per criterion, nonzero exit on any failure.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "modspace/acceptance.hpp"

int main(int argc, char** argv) {
  modspace::acceptance::Options o;
  bool verbose = std::getenv("MODSPACE_VERBOSE") != nullptr;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--quick")) o.quick = true;
    else if (!std::strcmp(argv[i], "--workers") && i + 1 < argc) o.workers = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--verbose")) verbose = true;
  }
  modspace::log::set_sink([](const std::string& m) { std::cerr << "warning: " << m << '\n'; });
  bool ok = true;
  modspace::acceptance::run_acceptance(o, [&](const modspace::acceptance::CriterionResult& r) {
    std::cout << modspace::acceptance::format_line(r) << std::endl;
    if (verbose || !r.pass)
      for (const auto& d : r.details) std::cout << "    " << d << '\n';
    ok = ok && (r.pass || r.skipped);
  });
  return ok ? 0 : 1;
}
