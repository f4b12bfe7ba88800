#include <iostream>
#include <string>
#include <vector>

#include "ohres/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ohres::run_cli(args, std::cout, std::cerr);
}
