#include <iostream>

#include "cancoord/cli/commands.hpp"

int main(int argc, char** argv) {
  return cancoord::cli::run(argc, argv, std::cout, std::cerr);
}
