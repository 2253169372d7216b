#include <cstdlib>
#include <iostream>

#include "properties.hpp"

int main(int argc, char** argv) {
  const unsigned seed = argc > 1 ? static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10)) : 20240611u;
  const int factor = argc > 2 ? std::atoi(argv[2]) : 1;
  bool ok = true;
  for (const auto& r : taut::testing::run_all_properties(seed, factor)) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.failures
              << " failures";
    if (r.skipped) std::cout << ", " << r.skipped << " skipped";
    std::cout << "\n";
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}
