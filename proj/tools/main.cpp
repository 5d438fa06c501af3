#include <iostream>
#include <string>
#include <vector>

#include "tpdde/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tpdde::cli_main(args, std::cout, std::cerr);
}
