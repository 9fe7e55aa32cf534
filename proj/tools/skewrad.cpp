#include <iostream>
#include <string>
#include <vector>

#include "skewrad/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return skewrad::run_cli(args, std::cout, std::cerr);
}
