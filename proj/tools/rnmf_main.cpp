#include <iostream>

#include "rnmf/cli.hpp"

int main(int argc, char** argv) {
  return rnmf::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
