#include <iostream>

#include "tndp/cli/app.hpp"

int main(int argc, char** argv) { return tndp::cli::run(argc, argv, std::cout, std::cerr); }
