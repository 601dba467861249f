#include <iostream>

#include "sle/cli.hpp"

int main(int argc, char** argv) { return sle::run_cli(argc, argv, std::cout, std::cerr); }
