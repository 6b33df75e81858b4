#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  const jensen::cli::Outcome result = jensen::cli::run(args);
  std::cout << result.output << std::flush;
  std::cerr << result.error << std::flush;
  return result.exit_code;
}
