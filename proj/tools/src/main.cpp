#include <iostream>

#include "gdesign_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gdesign::cli::run(args, std::cout, std::cerr);
}
