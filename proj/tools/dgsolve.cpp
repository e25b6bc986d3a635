#include <iostream>
#include <string>
#include <vector>

#include "dgsor/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return dgsor::cli::cli_main(args, std::cout, std::cerr);
}
