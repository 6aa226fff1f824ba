#include <iostream>

#include "leaguelab/cli.hpp"

int main(int argc, char** argv) {
  return leaguelab::cli::run(argc, argv, std::cout, std::cerr, std::cin);
}
