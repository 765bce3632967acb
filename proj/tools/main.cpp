#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  return catenoid::cli::run_cli(argc, argv, std::cout, std::cerr);
}
