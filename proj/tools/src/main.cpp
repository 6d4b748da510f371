#include <iostream>
#include <string>
#include <vector>

#include "hilbert_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hilbert::cli::run(args, std::cout, std::cerr);
}
