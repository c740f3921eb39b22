#include <iostream>

#include "freeness/io.hpp"

int main(int argc, char** argv) { return freeness::run_cli(argc, argv, std::cout, std::cerr); }
