#include <iostream>

#include "bangnce/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bangnce::run_cli(args, std::cout, std::cerr);
}
