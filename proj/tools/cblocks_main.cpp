#include <iostream>
#include <string>
#include <vector>

#include "cblocks/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cblocks::cli::run(args, std::cout, std::cerr);
}
