#include <iostream>

#include "samo_cli/commands.hpp"

int main(int argc, char** argv) { return samo::cli::run_cli(argc, argv, std::cout, std::cerr); }
