#include <iostream>

#include "biped/cli.hpp"

int main(int argc, char** argv) { return biped::cli::run(argc, argv, std::cout, std::cerr); }
