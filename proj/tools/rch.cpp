#include <iostream>

#include "rch/cli.hpp"

int main(int argc, char** argv) { return rch::cli::run(argc, argv, std::cout, std::cerr); }
