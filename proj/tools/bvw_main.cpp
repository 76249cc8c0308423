#include "bvw/frontend/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bvw::run_cli(argc, argv, std::cout, std::cerr); }
