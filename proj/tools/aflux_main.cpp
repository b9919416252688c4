#include <unistd.h>

#include <iostream>
#include <vector>

#include "aflux/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return aflux::run_cli(args, std::cout, std::cerr, ::isatty(STDOUT_FILENO) == 1);
}
