#include <iostream>

#include "qnewton/cli.hpp"

int main(int argc, char** argv) { return qnewton::run_cli(argc, argv, std::cout, std::cerr); }
