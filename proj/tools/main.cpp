#include <iostream>
#include <string>
#include <vector>

#include "natanzon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return natanzon::cli::run(args, std::cout, std::cerr);
}
