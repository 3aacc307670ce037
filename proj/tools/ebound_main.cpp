#include <iostream>
#include <string>
#include <vector>

#include "ebound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ebound::cli::run(args, std::cout, std::cerr);
}
