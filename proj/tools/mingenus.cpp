#include <iostream>
#include <string>
#include <vector>

#include "mingenus/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mingenus::cli::run(args, std::cin, std::cout, std::cerr, mingenus::cli::Environment::from_process());
}
