#include <iostream>

#include "gqms/cli.hpp"

int main(int argc, char** argv)
{
    return gqms::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
