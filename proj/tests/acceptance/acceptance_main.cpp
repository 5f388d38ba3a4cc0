#include <cstring>
#include <iostream>

#include "skewlab/verify/acceptance.hpp"

int main(int argc, char** argv) {
  namespace sv = skewlab::verify;
  const bool fast = argc > 1 && std::strcmp(argv[1], "fast") == 0;
  const auto results = sv::run_acceptance(fast ? sv::Suite::Fast : sv::Suite::Full,
                                          [](const sv::CriterionResult& r) { std::cout << sv::format_result(r) << std::endl; });
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
