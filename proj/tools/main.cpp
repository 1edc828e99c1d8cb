#include <iostream>
#include <string>
#include <vector>

#include "ncdyn/cli/command.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncdyn::cli::main_entry(args, std::cout, std::cerr);
}
