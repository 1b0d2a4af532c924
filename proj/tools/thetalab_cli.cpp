#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return thetalab::cli::run(argc, argv, std::cout); }
