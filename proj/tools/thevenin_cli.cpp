#include <iostream>

#include "thevenin/cli.hpp"

int main(int argc, char** argv) { return thevenin::run_cli(argc, argv, std::cout, std::cerr); }
