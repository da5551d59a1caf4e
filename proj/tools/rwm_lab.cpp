#include <iostream>

#include "rwm/cli.hpp"

int main(int argc, char** argv) { return rwm::cli::run_cli(argc, argv, std::cout, std::cerr); }
