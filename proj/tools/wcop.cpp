#include <iostream>

#include "wcop/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return wcop::run_cli(args, std::cout, std::cerr);
}
