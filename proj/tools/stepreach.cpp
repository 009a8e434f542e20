#include <iostream>

#include "stepreach/cli.hpp"

int main(int argc, char** argv) { return stepreach::run_cli(argc, argv, std::cout, std::cerr); }
