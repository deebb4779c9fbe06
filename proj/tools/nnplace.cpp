// SPDX-License-Identifier: MIT

#include "nnplace/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nnplace::cli::main(argc, argv, std::cout, std::cerr); }
