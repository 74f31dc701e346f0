#include <iostream>
#include <vector>

#include "colombeau/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return colombeau::cli_main(args, std::cout, std::cerr);
}
