#include <iostream>

#include "qcap/cli.hpp"

int main(int argc, char** argv) {
    return qcap::run_main(argc, argv, std::cout, std::cerr);
}
