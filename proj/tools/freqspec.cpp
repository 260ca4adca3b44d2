#include "freqspec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return freqspec::cli::run(argc, argv, std::cout, std::cerr); }
