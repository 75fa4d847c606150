#include <iostream>

#include "affmb/frontdoor.hpp"

int main(int argc, char** argv) {
  return affmb::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr, std::cin);
}
