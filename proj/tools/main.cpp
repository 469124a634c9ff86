#include <iostream>
#include <string>
#include <vector>

#include "juniper/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return juniper::cli_dispatch(args, std::cout, std::cerr);
}
