#include <iostream>
#include <string>
#include <vector>

#include "funcon/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return funcon::cli::main(args, std::cout, std::cerr);
}
