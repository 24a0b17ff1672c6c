#include <iostream>

#include "tcyclo/cli.hpp"

int main(int argc, char **argv) { return tcyclo::cli::run(argc, argv, std::cout, std::cerr); }
