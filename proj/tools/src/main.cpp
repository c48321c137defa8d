#include <iostream>
#include <string>
#include <vector>

#include <ballmap_cli/cli.hpp>

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return ballmap::cli::run(args, std::cout, std::cerr);
}
