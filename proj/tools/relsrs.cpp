#include <iostream>

#include "relsrs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return relsrs::run_cli(args, std::cout, std::cerr);
}
