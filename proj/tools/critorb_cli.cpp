#include <iostream>

#include "critorb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto result = critorb::cli::run(args);
    if (!result.text.empty())
        std::cout << result.text;
    else
        std::cout << result.payload.dump(2) << "\n";
    if (!result.meta.empty()) std::cerr << result.meta << "\n";
    return result.exit_code();
}
