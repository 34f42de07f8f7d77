#include <iostream>

#include "xicor/cli.hpp"

int main(int argc, char** argv) { return xicor::cli_dispatch(argc, argv, std::cout, std::cerr); }
