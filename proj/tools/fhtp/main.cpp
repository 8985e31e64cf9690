#include <iostream>
#include <string>
#include <vector>

#include "fhtp/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fhtp::cli::dispatch(args, std::cout, std::cerr);
}
