#include <iostream>

#include "debias/cli.hpp"

int main(int argc, char** argv) {
  return debias::cli::run(argc, argv, std::cout, std::cerr);
}
