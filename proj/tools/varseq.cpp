#include <iostream>
#include <string>
#include <vector>

#include "varseq_cli.hpp"

int main(int argc, char** argv) {
  return varseq::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
