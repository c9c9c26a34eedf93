#include <iostream>

#include "buildings/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = buildings::cli::run(args);
  std::cout << buildings::cli::render(result);
  for (const auto& line : result.diagnostics) std::cerr << line << '\n';
  return buildings::cli::exit_code(result.status);
}
