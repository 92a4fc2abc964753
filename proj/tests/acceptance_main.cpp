/* Apache License, Version 2.0 */
#include <cstring>
#include <iostream>
#include <vector>

#include "ghp/verify.hpp"

// Runs the quantitative release gate and prints one pass/fail line per
// criterion. Exit code 0 iff everything passed.
int main(int argc, char** argv) {
  std::vector<std::string> filter;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--list") == 0) {
      for (const auto& c : ghp::verification_criteria())
        std::cout << c.id << " " << c.name << "\n";
      return 0;
    }
    filter.push_back(argv[i]);
  }
  auto results = ghp::run_verification(filter, &std::cout);
  return ghp::all_passed(results) ? 0 : 1;
}
