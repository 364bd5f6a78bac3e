#include "lmoment/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lmoment::cli::run(argc, argv, std::cout, std::cerr); }
