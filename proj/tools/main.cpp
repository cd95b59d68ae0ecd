#include <iostream>

#include "ditray/cli.hpp"

int main(int argc, char** argv) {
    return ditray::run_cli(argc, argv, std::cout, std::cerr);
}
