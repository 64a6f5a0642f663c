#include <iostream>
#include <string>
#include <vector>

#include "bh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bh::run_cli(args, std::cout, std::cerr);
}
