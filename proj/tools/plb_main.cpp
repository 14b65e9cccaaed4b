#include <iostream>
#include <string>
#include <vector>

#include "plb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return plb::run(args, std::cout, std::cerr);
}
