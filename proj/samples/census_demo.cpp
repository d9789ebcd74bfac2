// Line counts over the pencil x^4+y^4+z^4+w^4+lam*xyzw over GF(9).
// Usage: sample_census_demo FAMILY OUT.csv

#include <iostream>

#include "surflines/cli.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " FAMILY OUT.csv\n";
    return 2;
  }
  try {
    const auto s = surflines::run_census(argv[1], argv[2], surflines::kDefaultBudget, std::cout);
    std::cout << s.members << " members, " << s.maximal << " maximal\n";
  } catch (const surflines::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
