#include <iostream>

#include "exsheaf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return exsheaf::cli::run(args, std::cout, std::cerr);
}
