#include <iostream>

#include "ecodom/cli.hpp"

int main(int argc, char** argv) { return ecodom::cli::run(argc, argv, std::cout, std::cerr); }
