#include <iostream>
#include <string>
#include <vector>

#include "chudsym/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return chudsym::cli::run(args, std::cout);
}
