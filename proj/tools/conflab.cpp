#include <iostream>

#include "conflab/cli.hpp"

int main(int argc, char** argv) { return conflab::cli::run(argc, argv, std::cout, std::cerr); }
