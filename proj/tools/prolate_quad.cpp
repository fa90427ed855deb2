#include <iostream>
#include <string>
#include <vector>

#include "prolate/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return prolate::cli::run(args, std::cout, std::cerr);
}
