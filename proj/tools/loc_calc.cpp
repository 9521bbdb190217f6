#include <iostream>

#include "loccalc/cli.hpp"

int main(int argc, char** argv) { return loccalc::run(argc, argv, std::cout, std::cerr); }
