#include <iostream>
#include <string>
#include <vector>

#include "emtopo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return emtopo::cli::run(args, std::cout, std::cerr);
}
