#include "whyprov/cli.h"

#include <iostream>

int main(int argc, char** argv) {
    return whyprov::runCli(argc, argv, std::cout, std::cerr);
}
