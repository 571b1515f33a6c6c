#include <iostream>
#include <string>
#include <vector>

#include "tropharm/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tropharm::cli::run(args, std::cout, std::cerr);
}
