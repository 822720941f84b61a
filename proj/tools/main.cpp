#include <iostream>

#include "polarmax/cli.hpp"

int main(int argc, char** argv) { return polarmax::cli::run(argc, argv, std::cout, std::cerr); }
