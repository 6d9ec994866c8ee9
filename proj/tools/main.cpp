#include <iostream>

#include "hitdisk/cli.hpp"

int main(int argc, char** argv) { return hitdisk::cli::run(argc, argv, std::cout, std::cerr); }
