#include <iostream>
#include <vector>

#include "autoloop/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return autoloop::run_cli(args, std::cout, std::cerr);
}
