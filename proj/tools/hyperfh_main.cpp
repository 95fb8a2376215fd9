#include <iostream>

#include "hyperfh/cli.hpp"

int main(int argc, char** argv) { return hyperfh::run_cli(argc, argv, std::cout, std::cerr); }
