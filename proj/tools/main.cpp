#include <iostream>
#include <string>
#include <vector>

#include "zeta_cover/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return zeta_cover::cli::run(args, std::cout, std::cerr);
}
