#include <iostream>
#include <string>
#include <vector>

#include "graphaug/cli.hpp"
#include "graphaug/verify.hpp"

int main(int argc, char** argv) {
  graphaug::steady_allocator();
  std::vector<std::string> args(argv + 1, argv + argc);
  return graphaug::cli::run(args, std::cout, std::cerr);
}
