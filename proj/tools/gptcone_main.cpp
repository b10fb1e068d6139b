#include <iostream>

#include "gptcone/cli.hpp"

int main(int argc, char** argv) {
  return gptcone::run_cli(argc, argv, std::cout, std::cerr);
}
