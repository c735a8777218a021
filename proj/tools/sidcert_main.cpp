#include <string>
#include <vector>

#include "sidcert/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sidcert::cli::run_cli(std::move(args));
}
