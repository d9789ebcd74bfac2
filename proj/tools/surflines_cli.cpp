#include <iostream>

#include "surflines/cli.hpp"

int main(int argc, char** argv) { return surflines::run(argc, argv, std::cout, std::cerr); }
