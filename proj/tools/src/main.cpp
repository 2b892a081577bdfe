#include <landflow_cli/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return landflow::cli::run(argc, argv, std::cout, std::cerr); }
