#include <iostream>
#include <string>
#include <vector>

#include "cayleysaw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cayleysaw::dispatch(args, std::cout, std::cerr);
}
