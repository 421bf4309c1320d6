#include <iostream>

#include "treeharm/cli.hpp"

int main(int argc, char** argv) { return treeharm::run_cli(argc, argv, std::cout, std::cerr); }
