#include <iostream>
#include <string>
#include <vector>

#include "finphase/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return finphase::cli::dispatch(args, std::cout, std::cerr);
}
