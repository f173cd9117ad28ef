#include <iostream>
#include <string>
#include <vector>

#include "tempnet_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tempnet::cli::run(args, std::cout, std::cerr);
}
