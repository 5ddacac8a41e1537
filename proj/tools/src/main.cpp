#include <iostream>
#include <string>
#include <vector>

#include "curvebump/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return curvebump::cli::run(args, std::cout, std::cerr);
}
