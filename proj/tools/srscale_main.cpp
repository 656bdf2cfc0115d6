#include <iostream>

#include "srscale/cli.hpp"

int main(int argc, char** argv) { return srscale::run_cli(argc, argv, std::cout, std::cerr); }
