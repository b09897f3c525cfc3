#include <iostream>
#include <string>
#include <vector>

#include "bfoml/cli.hpp"

int main(int argc, char** argv) {
  return bfoml::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
