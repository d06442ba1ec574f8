#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return oscx::run(argc, argv, std::cout, std::cerr); }
