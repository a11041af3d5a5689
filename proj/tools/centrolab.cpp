#include <iostream>

#include "centrolab/cli.hpp"

int main(int argc, char** argv) { return centrolab::cli::run(argc, argv, std::cout, std::cerr); }
