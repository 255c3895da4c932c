#include <iostream>
#include <string>
#include <vector>

#include "fbnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const fbnet::cli::RunConfig config = fbnet::cli::parse_args(args);
    return fbnet::cli::run(config);
  } catch (const fbnet::cli::HelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const fbnet::cli::UsageError& e) {
    std::cerr << "fbnet: " << e.what() << '\n';
    std::cerr << "run 'fbnet --help' for usage\n";
    return 2;
  }
}
