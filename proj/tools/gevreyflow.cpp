#include <iostream>
#include <string>
#include <vector>

#include "gevreyflow/io/dispatch.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return gevreyflow::run_cli(args, std::cout, std::cerr);
}
