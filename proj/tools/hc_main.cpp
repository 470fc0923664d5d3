#include <iostream>

#include "hc/cli.hpp"

int main(int argc, char** argv) { return hc::cli::run_cli(argc, argv, std::cout, std::cerr); }
