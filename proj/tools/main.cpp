#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return lqnet::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
