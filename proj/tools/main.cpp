#include <iostream>
#include <string>
#include <vector>

#include "causalineq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return causalineq::run_cli(args, std::cout, std::cerr);
}
