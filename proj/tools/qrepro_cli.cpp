#include <iostream>
#include <string>
#include <vector>

#include "qrepro/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qrepro::cli::run(args, std::cout, std::cerr);
}
