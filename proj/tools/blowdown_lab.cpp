#include <iostream>
#include <string>
#include <vector>

#include "blowdown/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return blowdown::run(args, std::cout, std::cerr);
}
