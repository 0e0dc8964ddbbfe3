#include "hamincl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hamincl::cli::run(argc, argv, std::cout, std::cerr); }
