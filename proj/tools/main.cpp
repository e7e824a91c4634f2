#include <iostream>

#include "kreweras/cli.hpp"

int main(int argc, char** argv) { return kreweras::cli::main(argc, argv, std::cout, std::cerr); }
