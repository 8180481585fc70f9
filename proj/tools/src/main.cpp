#include <iostream>
#include <vector>

#include "emg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return emg::run_emg(args, std::cout, std::cerr);
}
