#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return petrigame::cli::run(argc, argv, std::cout, std::cerr);
}
