#include <iostream>

#include "lqembed/cli.hpp"

int main(int argc, char** argv) { return lqembed::cli::run(argc, argv, std::cout, std::cerr); }
