#include <iostream>

#include "fractile/cli.hpp"

int main(int argc, char** argv) { return fractile::run_cli(argc, argv, std::cout, std::cerr); }
