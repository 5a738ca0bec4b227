#include <iostream>

#include "ps4/cli.hpp"

int main(int argc, char** argv) {
  return ps4::cli::main_entry(argc, argv, std::cout, std::cerr);
}
