#include <iostream>

#include "qres/cli.hpp"

int main(int argc, char** argv) { return qres::cli::run(argc, argv, std::cout, std::cerr); }
