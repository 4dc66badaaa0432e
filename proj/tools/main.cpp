#include <iostream>

#include "rac_cli.hpp"

int main(int argc, char** argv) {
    return rac::cli::run(argc, argv, std::cout, std::cerr);
}
