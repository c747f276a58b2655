#include <iostream>

#include "depthfill/cli.hpp"

int main(int argc, char** argv) {
  return depthfill::cli::run(argc, argv, std::cout, std::cerr);
}
