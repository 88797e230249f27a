#include <iostream>

#include "netmean/cli.hpp"

int main(int argc, char** argv) { return netmean::cli::run(argc, argv, std::cout, std::cerr); }
