// mvla command-line tool.

#include <iostream>

#include "mvla/cli.hpp"

int main(int argc, char** argv) {
  return mvla::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
