#include <iostream>
#include <string>
#include <vector>

#include "scalemodel/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return scalemodel::cli::run(args, std::cout, std::cerr);
}
