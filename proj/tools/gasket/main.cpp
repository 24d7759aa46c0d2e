#include <iostream>
#include <string>
#include <vector>

#include "gasket_cli/app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return gasket::cli::dispatch(args, std::cout, std::cerr);
}
