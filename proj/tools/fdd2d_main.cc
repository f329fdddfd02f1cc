#include <iostream>
#include <string>
#include <vector>

#include "fdd2d/commands.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fdd2d::RunCli(args, std::cout, std::cerr);
}
