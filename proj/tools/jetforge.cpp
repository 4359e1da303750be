#include <iostream>
#include <string>
#include <vector>

#include "jetforge/cli.hpp"

int main(int argc, char** argv) {
  return jetforge::cli::main_entry(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
