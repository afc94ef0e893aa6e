#include <iostream>

#include "wormcr/cli.hpp"

int main(int argc, char** argv) { return wormcr::run(argc, argv, std::cout, std::cerr); }
