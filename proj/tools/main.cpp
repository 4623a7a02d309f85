#include <iostream>
#include <string>
#include <vector>

#include "schurbd/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return schurbd::cli::run(args, std::cout, std::cerr);
}
