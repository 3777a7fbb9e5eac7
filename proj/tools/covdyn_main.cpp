#include <iostream>
#include <string>
#include <vector>

#include "covdyn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return covdyn::cli_run(args, std::cout, std::cerr);
}
