#include <iostream>

#include "lfbo/cli/experiment.hpp"

int main(int argc, char** argv) { return lfbo::cli::main_entry(argc, argv, std::cout, std::cerr); }
