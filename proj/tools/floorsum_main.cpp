#include "floorsum/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return floorsum::cli::run(argc, argv, std::cout, std::cerr); }
