#include "rampforge/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    return rampforge::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
