#include <iostream>
#include <string>
#include <vector>

#include "singulab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return singulab::cli::run(args, std::cout, std::cerr);
}
