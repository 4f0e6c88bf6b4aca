#include <iostream>

#include "spin7/cli.hpp"

int main(int argc, char** argv) {
  return spin7::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
