#include <iostream>

#include "gks/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gks::cli::run(std::move(args), std::cout, std::cerr);
}
