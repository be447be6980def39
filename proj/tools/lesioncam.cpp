#include "lesioncam/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return lesioncam::cli::run(argc, argv, std::cout, std::cerr);
}
