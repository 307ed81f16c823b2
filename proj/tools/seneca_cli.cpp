#include "seneca/cli.hpp"

int main(int argc, char** argv)
{
    return seneca::cli_main(argc, argv);
}
