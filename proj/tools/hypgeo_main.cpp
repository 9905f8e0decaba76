#include <iostream>

#include "hypgeo/cli.hpp"

int main(int argc, char** argv) { return hypgeo::run_cli(argc, argv, std::cout, std::cerr); }
