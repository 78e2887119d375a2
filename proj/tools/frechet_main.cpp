#include <iostream>

#include "frechet/cli.hpp"

int main(int argc, char** argv) { return frechet::cli::run(argc, argv, std::cout, std::cerr); }
