#include <iostream>

#include "bo/cli.hpp"

int main(int argc, char** argv) { return bo::cli::run_cli(argc, argv, std::cout, std::cerr); }
