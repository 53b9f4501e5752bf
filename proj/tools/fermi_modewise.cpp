#include <iostream>
#include <string>
#include <vector>

#include "fmw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fmw::cli_main(args, std::cin, std::cout, std::cerr);
}
