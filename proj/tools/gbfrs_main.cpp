#include <iostream>
#include <string>
#include <vector>

#include "gbfrs/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gbfrs::cli::run(args, std::cout, std::cerr);
}
