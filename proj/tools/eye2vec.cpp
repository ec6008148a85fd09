#include <iostream>
#include <string>
#include <vector>

#include "eye2vec/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return eye2vec::cli::run(args, std::cout, std::cerr);
}
