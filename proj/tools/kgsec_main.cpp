#include "kgsec/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return kgsec::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
