#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return sl2h::cli::dispatch(argc, argv, std::cout, std::cerr); }
