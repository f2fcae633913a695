#include "k3aut/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    k3aut::cli::CommandResult res = k3aut::cli::run_cli(args, argv[0]);
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}
