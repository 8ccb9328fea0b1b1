#include <iostream>

#include "tucker/cli.hpp"

int main(int argc, char** argv) { return tucker::cli::run(argc, argv, std::cout, std::cerr); }
