#include <iostream>

#include "pdlab/cli.hpp"

int main(int argc, char** argv)
{
    return pdlab::cli::run(argc, argv, std::cout, std::cerr);
}
