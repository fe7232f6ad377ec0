// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Optional arguments restrict the run to the given criterion ids.

#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  reslab::app::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.push_back(std::atoi(argv[i]));

  std::size_t failed = 0;
  const auto results = reslab::app::run_acceptance(options, [&](const reslab::app::CriterionResult& r) {
    std::cout << reslab::app::format_line(r) << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
