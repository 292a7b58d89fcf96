#include <iostream>

#include "hazardforge/commands.hpp"

int main(int argc, char** argv) {
    return hazardforge::run_cli(argc, argv, std::cout, std::cerr);
}
