#include <iostream>
#include <string>
#include <vector>

#include "acpm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return acpm::run_cli(args, std::cout, std::cerr);
}
