#include <asplag/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return asplag::run_cli(argc, argv, std::cout, std::cerr); }
