#include <iostream>
#include <vector>

#include "araml/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return araml::run_cli(args, std::cout, std::cerr);
}
