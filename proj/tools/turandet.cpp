#include <iostream>

#include "turandet/cli.hpp"

int main(int argc, char** argv) { return turandet::cli::main_entry(argc, argv, std::cout, std::cerr); }
