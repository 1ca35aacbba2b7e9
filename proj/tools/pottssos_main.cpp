#include <iostream>
#include <string>
#include <vector>

#include "pottssos/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pottssos::cli::dispatch(args, std::cout, std::cerr);
}
