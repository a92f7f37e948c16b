#include <iostream>

#include "atasim/cli.hpp"

int main(int argc, char** argv) {
  return atasim::cli::main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
