#include "cli.hpp"

#include <iostream>

int main(int argc, char ** argv)
{
    return orbitsolve::cli::run(argc, argv, std::cout);
}
