#include <iostream>
#include <string>
#include <vector>

#include "lattice_scope/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lattice_scope::cli::run(args, std::cout, std::cerr);
}
