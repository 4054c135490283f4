#include <iostream>
#include <string>
#include <vector>

#include "relaynet/cli.hpp"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return relaynet::cli::run(args, std::cout, std::cerr);
}
