#include <iostream>

#include "fournls/cli.hpp"

int main(int argc, char** argv) { return fournls::cli::run(argc, argv, std::cout, std::cerr); }
