#include <iostream>

#include "ergo/cli.hpp"

int main(int argc, char** argv) { return ergo::cli::run(argc, argv, std::cout, std::cerr); }
