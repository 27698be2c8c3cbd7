#include <iostream>

#include "duoidal/cli.hpp"

int main(int argc, char** argv) { return duoidal::cli::run(argc, argv, std::cout, std::cerr); }
