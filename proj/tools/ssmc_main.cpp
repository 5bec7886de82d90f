#include <iostream>
#include <string>
#include <vector>

#include "ssmc/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ssmc::run_cli(args, std::cout, std::cerr);
}
