#include <iostream>

#include "raabe/cli.hpp"

int main(int argc, char** argv) { return raabe::cli::run(argc, argv, std::cout, std::cerr); }
