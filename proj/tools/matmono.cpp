#include <iostream>
#include <string>
#include <vector>

#include "matmono/cli.hpp"

int main(int argc, char** argv) {
  return matmono::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
