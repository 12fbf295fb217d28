#include "randpoly/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return randpoly::cli::run(argc, argv, std::cout, std::cerr); }
