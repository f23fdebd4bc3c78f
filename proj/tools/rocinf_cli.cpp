#include <iostream>

#include "rocinf/cli.hpp"

int main(int argc, char** argv) { return rocinf::run_cli(argc, argv, std::cout, std::cerr); }
