#include <iostream>

#include "radial_cli/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return radial::cli::main_entry(args, std::cout, std::cerr);
}
