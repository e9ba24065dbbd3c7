#include <iostream>

#include "speclat/cli.hpp"

int main(int argc, char** argv) { return speclat::cli::main(argc, argv, std::cout, std::cerr); }
